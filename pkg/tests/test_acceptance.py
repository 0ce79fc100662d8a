"""Acceptance suite: one PASS/FAIL line per check, grouped by criterion.

Tolerances come from ``hkit.acceptance.DEFAULT_TOLERANCES``. The suite runs
once per session; the determinism criterion runs it a second time and
compares the canonical manifests byte for byte.

Run directly (``python tests/test_acceptance.py``) for the plain report.
"""

import sys

import pytest

from hkit import acceptance

SEED = 0


@pytest.fixture(scope="module")
def suite_rows():
    return acceptance.run_criteria(SEED)


def _report(rows, capsys):
    with capsys.disabled():
        print()
        for r in rows:
            print(r.line())


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA),
                         ids=[f"{n}-{acceptance.SUITES[n]}" for n in sorted(acceptance.CRITERIA)])
def test_criterion(number, suite_rows, capsys):
    rows = [r for r in suite_rows if r.criterion.rstrip("abcd") == str(number)]
    assert rows, f"criterion {number} produced no checks"
    _report(rows, capsys)
    failed = [r.line() for r in rows if not r.passed]
    assert not failed, "\n".join(failed)


def test_criterion_11_determinism(suite_rows, capsys):
    again = acceptance.run_criteria(SEED)
    row = acceptance.criterion_determinism(acceptance.manifest_bytes(suite_rows, SEED),
                                           acceptance.manifest_bytes(again, SEED))
    _report([row], capsys)
    assert row.passed


if __name__ == "__main__":
    from hkit.cli import verify_all
    sys.exit(verify_all(SEED))
