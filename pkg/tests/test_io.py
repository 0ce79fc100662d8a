import numpy as np
import pytest

from hkit import io
from hkit.heisenberg import HPoint
from hkit.holder import GridMap, SampledPath, weierstrass_path
from hkit.planar import circle, winding_field


def test_path_csv_roundtrip(tmp_path):
    p = weierstrass_path(0.7, terms=6, N=64, d=3, seed=1)
    io.write_path_csv(p, tmp_path / "p.csv")
    back = io.read_path_csv(tmp_path / "p.csv", 0.7)
    assert np.array_equal(back.values, p.values) and np.array_equal(back.times, p.times)
    assert (tmp_path / "p.csv").read_text().splitlines()[0] == "t,v1,v2,v3"


def test_path_csv_errors(tmp_path):
    (tmp_path / "e.csv").write_text("t,v\n")
    with pytest.raises(ValueError):
        io.read_path_csv(tmp_path / "e.csv")
    (tmp_path / "one.csv").write_text("0\n1\n")
    with pytest.raises(ValueError):
        io.read_path_csv(tmp_path / "one.csv")
    with pytest.raises(OSError):
        io.read_path_csv(tmp_path / "missing.csv")


def test_hpoints_roundtrip(tmp_path):
    pts = [HPoint([0.1, 0.2], 0.3), HPoint([1e-300, -5.0], 1e300)]
    io.write_hpoints_csv(pts, tmp_path / "h.csv")
    back = io.read_hpoints_csv(tmp_path / "h.csv")
    assert [b.coords().tolist() for b in back] == [p.coords().tolist() for p in pts]
    (tmp_path / "bad.csv").write_text("2,1,2,3\n")
    with pytest.raises(ValueError):
        io.read_hpoints_csv(tmp_path / "bad.csv")


@pytest.mark.parametrize("shape", [(17,), (5, 7)])
def test_gridmap_roundtrip(tmp_path, shape):
    vals = np.random.default_rng(0).standard_normal(shape + (3,))
    lo, hi = (0.0,) * len(shape), (1.0,) * (len(shape) - 1) + (2.5,)
    f = GridMap(lo, hi, vals)
    io.write_gridmap(f, tmp_path / "g.grid")
    back = io.read_gridmap(tmp_path / "g.grid")
    assert np.array_equal(back.values, vals) and back.lo == f.lo and back.hi == f.hi
    raw = (tmp_path / "g.grid").read_bytes()
    (tmp_path / "t.grid").write_bytes(raw[:-8])
    with pytest.raises(ValueError):
        io.read_gridmap(tmp_path / "t.grid")


def test_gridmap_rejects_3d(tmp_path):
    with pytest.raises(ValueError):
        io.write_gridmap(GridMap((0, 0, 0), (1, 1, 1), np.zeros((2, 2, 2, 1))), tmp_path / "x")


def test_winding_outputs(tmp_path):
    wf = winding_field(circle(64), 32)
    io.write_winding_csv(wf, tmp_path / "w.csv")
    io.write_winding_pgm(wf, tmp_path / "w.pgm")
    rows = (tmp_path / "w.csv").read_text().splitlines()
    assert rows[0] == "x,y,w,masked" and len(rows) == 1 + 32 * 32
    # x varies fastest
    assert float(rows[1].split(",")[1]) == float(rows[2].split(",")[1])
    pgm = (tmp_path / "w.pgm").read_text().splitlines()
    assert pgm[:4] == ["P2", "# winding offset 0", "32 32", "1"]


def test_json_and_checksum_are_deterministic(tmp_path):
    io.dump_json({"b": 1, "a": [1.5, 2]}, tmp_path / "a.json")
    io.dump_json({"a": [1.5, 2], "b": 1}, tmp_path / "b.json")
    assert io.sha256(tmp_path / "a.json") == io.sha256(tmp_path / "b.json")
    assert io.load_json(tmp_path / "a.json") == {"a": [1.5, 2], "b": 1}
