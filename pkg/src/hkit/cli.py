"""Batch command-line frontend.

Every subcommand has a parameter schema. The same schema builds its argparse
flags and validates ``run`` configs, so unknown keys are rejected on both
paths. Each run writes its outputs plus ``manifest.json`` (config echo,
version, seed, thread count, sha256 per output) into the output directory;
wall time goes to ``timing.json`` so manifests of identical runs are
byte-identical.

Exit codes: 0 success, 1 failed acceptance criterion, 2 config/parse error,
3 numeric precondition violated, 4 IO error. Errors are printed to stderr
as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, acceptance, hodge, io
from .errors import PreconditionError
from .exterior import Covector
from .heisenberg import HPoint, koranyi_dist, metric_comparison_check
from .holder import GridMap, MollifierKernel, SampledPath, weierstrass_field, weierstrass_path
from .horizontal import (cumulative_height, decay_exponent_fit, horizontal_lift_curve,
                         horizontality_residual)
from .planar import (ClosedCurve2D, change_of_variables_check, circle, polar_gridmap, winding_field,
                     zust_jacobian_square)
from .young import young_integral

EXIT_FAILED, EXIT_CONFIG, EXIT_PRECONDITION, EXIT_IO = 1, 2, 3, 4


class ConfigError(ValueError):
    """Malformed configuration or command line."""


# ----------------------------------------------------------------------------
# parameter schemas


@dataclass(frozen=True)
class Param:
    type: type
    default: object = None
    required: bool = False
    choices: tuple | None = None
    help: str = ""


SCHEMAS: dict[str, dict[str, Param]] = {
    "generate": {
        "kind": Param(str, "weierstrass", choices=("weierstrass", "circle", "perturbed-circle",
                                                   "lifted-weierstrass", "disk-map", "fourier-form"),
                      help="what to generate"),
        "gamma": Param(float, 0.75, help="Hölder exponent of Weierstrass data"),
        "n": Param(int, 4096, help="number of intervals (paths) or angular nodes (disk maps)"),
        "terms": Param(int, 12, help="Weierstrass terms"),
        "base": Param(int, 2, help="Weierstrass frequency base"),
        "dim": Param(int, 1, help="components of a Weierstrass path"),
        "amp": Param(float, 0.1, help="perturbation amplitude"),
        "k": Param(int, 2, help="torus dimension of a Fourier form"),
        "l": Param(int, 1, help="degree of a Fourier form"),
        "modes": Param(int, 8, help="mode cutoff M of a Fourier form"),
        "out": Param(str, None, help="output file (default depends on kind)"),
    },
    "young": {
        "in": Param(str, required=True, help="integrand path CSV (t, f)"),
        "in2": Param(str, required=True, help="integrator path CSV (t, g)"),
        "method": Param(str, "rs", choices=("rs", "mollified", "both")),
        "alpha": Param(float, None, help="Hölder exponent of f (estimated with a warning if absent)"),
        "beta": Param(float, None, help="Hölder exponent of g"),
        "richardson": Param(bool, False, help="Richardson step on the Riemann–Stieltjes route"),
        "kernel_resolution": Param(int, 1025),
        "out": Param(str, "young.json"),
    },
    "winding": {
        "curve": Param(str, required=True, help="closed curve CSV (t, x, y)"),
        "res": Param(int, 512, help="cells per axis"),
        "close": Param(bool, False, help="append the first point if the curve is open"),
        "out": Param(str, "field.csv"),
    },
    "lift": {
        "planar": Param(str, required=True, help="planar path CSV (t, x1, y1, ...)"),
        "t0": Param(float, 0.0),
        "gamma": Param(float, None, help="declared Hölder exponent (must exceed 1/2)"),
        "richardson": Param(bool, False, help="stride-2 Richardson step on the height sums"),
        "out": Param(str, "hpath.csv"),
    },
    "decay": {
        "map": Param(str, required=True, help="GridMap binary into H^n"),
        "form": Param(str, "contact", help="'contact' or a basis form such as dy1 or dx1^dy1"),
        "gamma": Param(float, None, required=True),
        "eps": Param(str, "2^-4..2^-10", help="'2^-a..2^-b' or a comma list"),
        "kernel_resolution": Param(int, 1025),
        "out": Param(str, "report.json"),
    },
    "jacobian2d": {
        "map": Param(str, required=True, help="GridMap binary of a planar map"),
        "mode": Param(str, "disk", choices=("disk", "square"),
                      help="disk: change of variables on the polar grid; square: Riemann-sum Jacobian"),
        "res": Param(int, 1024, help="winding raster resolution (disk mode)"),
        "gamma": Param(float, None),
        "kernel_resolution": Param(int, 1025),
        "out": Param(str, "jacobian.json"),
    },
    "hodge": {
        "in": Param(str, required=True, help="FourierForm JSON"),
        "out": Param(str, "split.json"),
    },
    "metric": {
        "in": Param(str, required=True, help="HPoint CSV rows n, z..., t"),
        "out": Param(str, "metric.csv"),
    },
}

COMMANDS = tuple(SCHEMAS)
CONFIG_KEYS = {"command", "params", "seed", "output_dir"}
DEFAULT_OUT = {"weierstrass": "path.csv", "circle": "curve.csv", "perturbed-circle": "curve.csv",
               "lifted-weierstrass": "map.grid", "disk-map": "map.grid", "fourier-form": "form.json"}
MAX_PAIRWISE_POINTS = 2000


def _coerce(name: str, p: Param, value):
    if value is None:
        return None
    try:
        if p.type is bool:
            if isinstance(value, str):
                if value.lower() in ("1", "true", "yes"):
                    return True
                if value.lower() in ("0", "false", "no"):
                    return False
                raise ValueError(value)
            return bool(value)
        out = p.type(value)
    except (TypeError, ValueError):
        raise ConfigError(f"parameter {name!r}: cannot read {value!r} as {p.type.__name__}") from None
    if p.choices and out not in p.choices:
        raise ConfigError(f"parameter {name!r}: {out!r} not in {list(p.choices)}")
    return out


def validate_params(command: str, params: dict) -> dict:
    """Fill defaults, coerce types and reject unknown or missing keys."""
    if command not in SCHEMAS:
        raise ConfigError(f"unknown command {command!r}; expected one of {list(COMMANDS)}")
    schema = SCHEMAS[command]
    unknown = set(params) - set(schema)
    if unknown:
        raise ConfigError(f"unknown parameters for {command}: {sorted(unknown)}")
    out = {}
    for name, p in schema.items():
        out[name] = _coerce(name, p, params.get(name, p.default))
        if p.required and out[name] is None:
            raise ConfigError(f"{command}: parameter {name!r} is required")
    return out


@dataclass
class ExperimentConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    output_dir: str = "."

    @classmethod
    def from_json(cls, obj) -> "ExperimentConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(obj) - CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "command" not in obj:
            raise ConfigError("config needs a 'command'")
        seed = obj.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ConfigError("seed must be an unsigned integer")
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError("'params' must be an object")
        cfg = cls(str(obj["command"]), params, seed, str(obj.get("output_dir", ".")))
        cfg.params = validate_params(cfg.command, cfg.params)
        return cfg


# ----------------------------------------------------------------------------
# helpers


def _threads(flag: int | None = None) -> int:
    """Thread count from --threads, else HKIT_THREADS, else 1."""
    raw = str(flag) if flag is not None else os.environ.get("HKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"thread count must be an integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError("thread count must be positive")
    return n


def _pin_threads(n: int) -> None:
    import numba
    # the sandbox TBB is too old; numba falls back on its own and warns
    warnings.filterwarnings("ignore", message=".*TBB.*", category=numba.NumbaWarning)
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def parse_eps(spec: str) -> list[float]:
    """'2^-4..2^-10' (dyadic, step one) or a comma-separated list."""
    spec = spec.strip()
    if ".." in spec:
        lo, hi = spec.split("..")
        try:
            a, b = (int(s.strip().removeprefix("2^")) for s in (lo, hi))
        except ValueError:
            raise ConfigError(f"bad eps range {spec!r}") from None
        step = -1 if b < a else 1
        return [2.0 ** j for j in range(a, b + step, step)]
    try:
        return [float(s) for s in spec.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"bad eps list {spec!r}") from None


def parse_form(name: str, D: int):
    """'contact', or wedge of basis names dx1, dy1, ..., dt, e.g. 'dx1^dy1'."""
    if name == "contact":
        return "contact"
    n = (D - 1) // 2
    idx = []
    for part in name.split("^"):
        part = part.strip()
        if part == "dt":
            idx.append(D)
        elif part[:2] in ("dx", "dy") and part[2:].isdigit() and 1 <= int(part[2:]) <= n:
            j = int(part[2:])
            idx.append(2 * j - 1 if part[1] == "x" else 2 * j)
        else:
            raise ConfigError(f"cannot parse form component {part!r} for H^{n}")
    if len(set(idx)) != len(idx):
        raise ConfigError(f"repeated index in {name!r}")
    return Covector.basis_element(D, *idx)


def _write_path(path: SampledPath, dest: Path, fmt: str, names=None):
    if fmt == "json":
        io.dump_json({"t": path.times.tolist(), "values": path.values.tolist(), "gamma": path.gamma},
                     dest)
    else:
        io.write_path_csv(path, dest, names)


# ----------------------------------------------------------------------------
# commands; each returns (output paths, summary)


def cmd_generate(p: dict, seed: int, out: Path, fmt: str):
    kind = p["kind"]
    dest = out / (p["out"] or DEFAULT_OUT[kind])
    summary = {"kind": kind}
    if kind == "weierstrass":
        path = weierstrass_path(p["gamma"], p["base"], p["terms"], p["n"], p["dim"], seed)
        _write_path(path, dest, fmt)
    elif kind in ("circle", "perturbed-circle"):
        pts = circle(p["n"]).points
        if kind == "perturbed-circle":
            W = weierstrass_path(p["gamma"], p["base"], p["terms"], p["n"], 2, seed).values
            pts = pts + p["amp"] * (W - W[:1])
            pts[-1] = pts[0]
        _write_path(SampledPath(np.linspace(0.0, 1.0, p["n"] + 1), pts), dest, fmt, ["x", "y"])
    elif kind == "lifted-weierstrass":
        planar = weierstrass_path(p["gamma"], p["base"], p["terms"], p["n"], 2 * max(1, p["dim"] // 2),
                                  seed)
        lift = horizontal_lift_curve(planar)
        io.write_gridmap(GridMap((0.0,), (1.0,), lift.values, p["gamma"]), dest)
    elif kind == "disk-map":
        def fn(X, Y):
            P = np.stack([X, Y], -1)
            return P + p["amp"] * weierstrass_field(P, p["gamma"], p["base"], p["terms"], 2, seed)
        io.write_gridmap(polar_gridmap(fn, p["n"] + 1, p["n"], p["gamma"]), dest)
    else:
        w = hodge.random_form(p["k"], p["l"], p["modes"], np.random.default_rng(seed))
        io.dump_json(w.to_json(), dest)
    return [dest], summary


def cmd_young(p: dict, seed: int, out: Path, fmt: str):
    f = io.read_path_csv(p["in"], p["alpha"])
    g = io.read_path_csv(p["in2"], p["beta"])
    kernel = MollifierKernel(p["kernel_resolution"])
    methods = ["rs", "mollified"] if p["method"] == "both" else [p["method"]]
    results = {}
    for m in methods:
        kw = {"alpha": p["alpha"], "beta": p["beta"]}
        kw.update({"richardson": p["richardson"]} if m == "rs" else {"kernel": kernel})
        r = young_integral(f, g, m, **kw)
        results[m] = {"value": r.value, "error_estimate": r.error_estimate}
    summary = {"results": results}
    if len(methods) == 2:
        a, b = results["rs"]["value"], results["mollified"]["value"]
        summary["relative_gap"] = abs(a - b) / max(abs(a), 1e-300)
    dest = out / p["out"]
    io.dump_json(summary, dest)
    return [dest], summary


def cmd_winding(p: dict, seed: int, out: Path, fmt: str):
    path = io.read_path_csv(p["curve"])
    if path.dim != 2:
        raise ConfigError("curve file needs columns t, x, y")
    curve = ClosedCurve2D.from_points(path.values, close=p["close"])
    wf = winding_field(curve, p["res"])
    dest = out / p["out"]
    if fmt == "json":
        io.dump_json({"x0": wf.x0, "y0": wf.y0, "hx": wf.hx, "hy": wf.hy, "w": wf.w.tolist(),
                      "masked": wf.mask.astype(int).tolist()}, dest)
    else:
        io.write_winding_csv(wf, dest)
    pgm = dest.with_suffix(".pgm")
    io.write_winding_pgm(wf, pgm)
    summary = {"integral": wf.integral(), "center_integral": wf.center_integral(),
               "mask_area": wf.mask_area(), "max_abs_winding": int(np.abs(wf.w).max())}
    return [dest, pgm], summary


def cmd_lift(p: dict, seed: int, out: Path, fmt: str):
    planar = io.read_path_csv(p["planar"], p["gamma"])
    lift = horizontal_lift_curve(planar, p["t0"])
    if p["richardson"]:
        height = p["t0"] + cumulative_height(planar.values, richardson=True)
        lift = SampledPath(lift.times, np.column_stack([planar.values, height]), lift.gamma)
    n = planar.dim // 2
    names = [f"{c}{j}" for j in range(1, n + 1) for c in ("x", "y")] + ["height"]
    dest = out / p["out"]
    _write_path(lift, dest, fmt, names)
    summary = {"final_height": float(lift.values[-1, -1]),
               "height_change": float(lift.values[-1, -1] - lift.values[0, -1]),
               "horizontality_residual": horizontality_residual(lift, p["richardson"])}
    return [dest], summary


def cmd_decay(p: dict, seed: int, out: Path, fmt: str):
    f = io.read_gridmap(p["map"], p["gamma"])
    form = parse_form(p["form"], f.target_dim)
    rep = decay_exponent_fit(f, form, parse_eps(p["eps"]), kernel=MollifierKernel(p["kernel_resolution"]))
    dest = out / p["out"]
    io.dump_json(rep.to_json(), dest)
    return [dest], {"fitted_slope": rep.fitted_slope, "reference_slope": rep.reference_slope,
                    "passed": rep.passed}


def cmd_jacobian2d(p: dict, seed: int, out: Path, fmt: str):
    f = io.read_gridmap(p["map"], p["gamma"])
    if f.m != 2 or f.target_dim != 2:
        raise ConfigError("jacobian2d needs a planar map on a 2-D grid")
    if p["mode"] == "disk":
        cov = change_of_variables_check(f, resolution=p["res"],
                                        kernel=MollifierKernel(p["kernel_resolution"]))
        summary = {"lhs": cov.lhs, "rhs": cov.rhs, "relative_gap": cov.gap,
                   "diagnostics": cov.diagnostics}
    else:
        g = f.values
        r = zust_jacobian_square(np.ones(g.shape[:2]), g[..., 0], g[..., 1], alpha=1.0, beta=p["gamma"])
        summary = {"value": r.value, "error_estimate": r.error_estimate, "levels": r.levels}
    dest = out / p["out"]
    io.dump_json(summary, dest)
    return [dest], {k: v for k, v in summary.items() if k not in ("diagnostics", "levels")}


def cmd_hodge(p: dict, seed: int, out: Path, fmt: str):
    w = hodge.FourierForm.from_json(io.load_json(p["in"]))
    split = hodge.hodge_decompose(w)
    rep = hodge.split_report(w, split)
    body = {"report": asdict(rep), "d_part": split.d_part.to_json(),
            "delta_part": split.delta_part.to_json(), "harmonic": split.harmonic.to_json(),
            "exact_potential": split.exact_potential.to_json() if split.exact_potential else None,
            "coexact_potential": split.coexact_potential.to_json() if split.coexact_potential else None}
    dest = out / p["out"]
    io.dump_json(body, dest)
    return [dest], asdict(rep)


def cmd_metric(p: dict, seed: int, out: Path, fmt: str):
    pts = io.read_hpoints_csv(p["in"])
    if len(pts) < 2:
        raise ConfigError("need at least two points")
    if len(pts) > MAX_PAIRWISE_POINTS:
        raise PreconditionError(f"pairwise table limited to {MAX_PAIRWISE_POINTS} points")
    rows = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            r = koranyi_dist(pts[i], pts[j])
            rows.append((i, j, r.euclid, r.koranyi, r.phi))
    dest = out / p["out"]
    if fmt == "json":
        io.dump_json([dict(zip(("i", "j", "euclid", "koranyi", "phi"), r)) for r in rows], dest)
    else:
        with open(dest, "w") as fh:
            fh.write("i,j,euclid,koranyi,phi\n")
            for i, j, e, k, ph in rows:
                fh.write(f"{i},{j},{io.FLOAT_FMT % e},{io.FLOAT_FMT % k},{io.FLOAT_FMT % ph}\n")
    lo, hi = metric_comparison_check(pts)
    return [dest], {"pairs": len(rows), "c_lower": lo, "c_upper": hi}


HANDLERS = {"generate": cmd_generate, "young": cmd_young, "winding": cmd_winding, "lift": cmd_lift,
            "decay": cmd_decay, "jacobian2d": cmd_jacobian2d, "hodge": cmd_hodge, "metric": cmd_metric}


# ----------------------------------------------------------------------------
# manifests


def write_manifest(out: Path, config: dict, outputs: list[Path], summary: dict, seed: int,
                   threads: int, wall_time: float) -> Path:
    entries = []
    for o in outputs:
        o = Path(o)
        entries.append({"file": os.path.relpath(o, out), "sha256": io.sha256(o)})
    manifest = {"toolkit": "hkit", "version": __version__, "config": config, "seed": seed,
                "threads": threads, "outputs": entries, "summary": summary,
                "timing_file": "timing.json"}
    io.dump_json({"wall_time_seconds": wall_time}, out / "timing.json")
    dest = out / "manifest.json"
    dest.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=acceptance._jsonable) + "\n")
    return dest


def run(cfg: ExperimentConfig, fmt: str = "csv", threads: int | None = None) -> dict:
    """Dispatch one experiment and write its manifest; returns the summary."""
    t0 = time.perf_counter()
    threads = _threads(threads)
    _pin_threads(threads)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    outputs, summary = HANDLERS[cfg.command](cfg.params, cfg.seed, out, fmt)
    config = {"command": cfg.command, "params": cfg.params, "seed": cfg.seed,
              "output_dir": cfg.output_dir, "out_format": fmt}
    write_manifest(out, config, outputs, summary, cfg.seed, threads, time.perf_counter() - t0)
    return summary


def verify_all(seed: int = 0, filter_: str | None = None, tolerances: dict | None = None,
               output_dir: str | None = None, threads: int | None = None, stream=None) -> int:
    """Run the acceptance suite, print one line per check and return the exit status."""
    stream = stream or sys.stdout
    t0 = time.perf_counter()
    threads = _threads(threads)
    _pin_threads(threads)
    only = acceptance.select(filter_)
    numbered = set(acceptance.CRITERIA)
    want_determinism = only is None or 11 in only
    run_set = (only or numbered) & numbered or numbered

    def log(row):
        print(row.line(), file=stream, flush=True)

    rows = acceptance.run_criteria(seed, tolerances, run_set, log)
    if want_determinism:
        first = acceptance.manifest_bytes(rows, seed)
        again = acceptance.run_criteria(seed, tolerances, run_set)
        det = acceptance.criterion_determinism(first, acceptance.manifest_bytes(again, seed))
        log(det)
        rows.append(det)
    failed = [r for r in rows if not r.passed]
    print(f"{len(rows) - len(failed)}/{len(rows)} checks passed", file=stream)
    if output_dir is not None:
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        dest = out / "verify.json"
        dest.write_bytes(acceptance.manifest_bytes(rows, seed))
        config = {"command": "verify", "filter": filter_, "tolerances": tolerances or {}, "seed": seed}
        write_manifest(out, config, [dest], {"passed": len(rows) - len(failed), "total": len(rows)},
                       seed, threads, time.perf_counter() - t0)
    return EXIT_FAILED if failed else 0


# ----------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hkit", description="Hölder analysis on the Heisenberg group: batch experiments.")
    ap.add_argument("--version", action="version", version=f"hkit {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output-dir", default=".")
    common.add_argument("--out-format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=int, default=None, help="overrides HKIT_THREADS")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, schema in SCHEMAS.items():
        sp = sub.add_parser(name, parents=[common])
        for key, p in schema.items():
            flag = "--" + key.replace("_", "-")
            if p.type is bool:
                sp.add_argument(flag, dest=key, action="store_true", help=p.help)
            else:
                sp.add_argument(flag, dest=key, type=str, default=None, choices=p.choices,
                                required=p.required, help=p.help)
    rp = sub.add_parser("run", parents=[common], help="run a JSON experiment config")
    rp.add_argument("--config", required=True)
    rp.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                    help="override one params entry")
    vp = sub.add_parser("verify", help="run the acceptance suite")
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--filter", default=None, help="comma list of suite names or criterion numbers")
    vp.add_argument("--tolerances", default=None, help="JSON file overriding tolerance keys")
    vp.add_argument("--output-dir", default=None)
    vp.add_argument("--threads", type=int, default=None)
    return ap


def _config_from_args(args) -> ExperimentConfig:
    if args.command == "run":
        try:
            obj = io.load_json(args.config)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{args.config}: {e}") from None
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        params = dict(obj.get("params", {}))
        for item in args.param:
            if "=" not in item:
                raise ConfigError(f"--param expects KEY=VALUE, got {item!r}")
            k, v = item.split("=", 1)
            params[k.strip()] = v
        obj = {**obj, "params": params}
        obj.setdefault("seed", args.seed)
        obj.setdefault("output_dir", args.output_dir)
        return ExperimentConfig.from_json(obj)
    params = {k: getattr(args, k) for k in SCHEMAS[args.command] if getattr(args, k) is not None}
    for k, p in SCHEMAS[args.command].items():
        if p.type is bool and not getattr(args, k):
            params.pop(k, None)
    if args.seed < 0:
        raise ConfigError("seed must be an unsigned integer")
    return ExperimentConfig(args.command, validate_params(args.command, params), args.seed,
                            args.output_dir)


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message, "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            tol = io.load_json(args.tolerances) if args.tolerances else None
            if tol is not None and not isinstance(tol, dict):
                raise ConfigError("tolerance file must hold a JSON object")
            acceptance.merged_tolerances(tol)          # reject unknown keys before running
            return verify_all(args.seed, args.filter, tol, args.output_dir, args.threads)
        cfg = _config_from_args(args)
        summary = run(cfg, args.out_format, args.threads)
        print(json.dumps(summary, sort_keys=True, default=acceptance._jsonable))
        return 0
    except PreconditionError as e:
        return _fail("precondition", str(e), EXIT_PRECONDITION)
    except OSError as e:
        return _fail("io", str(e), EXIT_IO)
    except (ConfigError, ValueError, json.JSONDecodeError) as e:
        return _fail("config", str(e), EXIT_CONFIG)


if __name__ == "__main__":
    sys.exit(main())
