"""Exit-gate checks, one per criterion, each printing a PASS/FAIL line.

Budgets are wall-clock limits in seconds; "seconds" is read as 30.
"""

import time

import pytest

from detroot.selftest import golden_q19, run_suite, scaling_bench

CRITERIA = [
    (1, "exhaustive square roots, p = 1 mod 8, p < 5000", "sqrt-exhaustive", 120),
    (2, "dispatcher totality, odd p < 5000", "dispatcher-totality", 120),
    (3, "group isomorphism for p in {17, 41, 73, 97}", "group-isomorphism", 30),
    (4, "Proth verdicts for N < 10**6", "proth-equivalence", 60),
    (5, "q = 19 tower constants", "tower-golden-q19", 30),
    (6, "radical tower cross-check for q in {7, 19}", "tower-cross-check", 30),
    (7, "roots of unity and cube roots, q < 5000", "roots-of-unity", 60),
]


def _report(capsys, number, ok, text):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {text}")


@pytest.mark.parametrize("number, label, suite, budget", CRITERIA, ids=[c[2] for c in CRITERIA])
def test_criterion(capsys, number, label, suite, budget):
    result = run_suite(suite, max_prime=5000, max_proth=10**6)
    ok = result.passed and result.seconds < budget
    detail = f"{label}; {result.cases} cases in {result.seconds:.1f}s (budget {budget}s)"
    if result.detail:
        detail += f"; {result.detail}"
    _report(capsys, number, ok, detail)
    assert result.passed, result.detail
    assert result.seconds < budget


def test_criterion_5_covers_every_constant():
    table = golden_q19()
    assert len(table) >= 10
    assert all(got == want for got, want in table.values())


def test_criterion_8_scaling_bench(capsys):
    start = time.perf_counter()
    bench = scaling_bench()
    slope = "n/a" if bench.slope is None else f"{bench.slope:.2f}"
    with capsys.disabled():
        print()
        for line in bench.lines():
            print(f"  {line}")
    # informational only: the fitted exponent is reported, never asserted
    _report(
        capsys,
        8,
        True,
        f"scaling bench, log-log slope {slope} over {len(bench.points)} sizes "
        f"in {time.perf_counter() - start:.1f}s (informational)",
    )
