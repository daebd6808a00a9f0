"""Acceptance criteria, each run at full size and its stated tolerance.

Every criterion prints one PASS/FAIL line (shown even under output
capture).  Run directly with ``python tests/test_acceptance.py`` for the
same report without pytest.
"""

from __future__ import annotations

import sys

import pytest

from smoothgerms.suites import SuiteResult, run_suite

# criterion number, suite, minimum instance count, extra requirement
CRITERIA = [
    (1, "hardy-field-axioms", 1000, "runtime < 30 s"),
    (2, "zero-set-dichotomy", 500, ""),
    (3, "sturm-oracle", 200, ""),
    (4, "partition-of-unity", 50, "sum error <= 1e-12 on 10^4 points"),
    (5, "smooth-extension", 50, "agreement <= 1e-14 relative"),
    (6, "quotient-embedding", 700, "500 germ pairs + 200 Hadamard polynomials"),
    (7, "weak-structure", 18, ">= 10^4 points per set"),
]

_cache: dict[str, SuiteResult] = {}


def result(name: str) -> SuiteResult:
    if name not in _cache:
        _cache[name] = run_suite(name)
    return _cache[name]


def extra_ok(number: int, res: SuiteResult) -> tuple[bool, str]:
    m = res.metrics
    if number == 1:
        return res.elapsed < 30.0, f"{res.elapsed:.1f}s"
    if number == 4:
        return m["worst_sum_error"] <= 1e-12, f"worst sum error {m['worst_sum_error']:.1e}"
    if number == 5:
        note = (
            f"worst agreement {m['worst_agreement']:.1e}; seam pairs {m['seam_pairs_checked']}; "
            f"gate pairs {m['gate_pairs_checked']}, coarse-pair misses {m['gate_coarse_pair_misses']}"
        )
        return m["worst_agreement"] <= 1e-14, note
    if number == 7:
        return m["points_per_set"] >= 10_000, f"{m['points_per_set']} points per set"
    return True, ""


def report(number: int, name: str, minimum: int, extra: str) -> tuple[bool, str]:
    res = result(name)
    ok_extra, note = extra_ok(number, res)
    ok = res.passed and res.instances >= minimum and ok_extra
    tag = "PASS" if ok else "FAIL"
    line = f"{tag} criterion {number} [{name}]: {res.instances} instances, {res.checks} checks, {len(res.failures)} failures ({res.elapsed:.1f}s)"
    if note:
        line += f"; {note}"
    for f in res.failures[:5]:
        line += f"\n    {f}"
    return ok, line


@pytest.mark.parametrize("number,name,minimum,extra", CRITERIA, ids=[c[1] for c in CRITERIA])
def test_criterion(number, name, minimum, extra, capsys):
    ok, line = report(number, name, minimum, extra)
    with capsys.disabled():
        print("\n" + line)
    res = result(name)
    assert res.instances >= minimum
    assert not res.failures, res.failures
    assert res.checks > 0
    assert ok, line


def main() -> int:
    lines = [report(*c) for c in CRITERIA]
    for _, line in lines:
        print(line)
    return 0 if all(ok for ok, _ in lines) else 1


if __name__ == "__main__":
    sys.exit(main())
