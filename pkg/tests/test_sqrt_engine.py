import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detroot.bigring import Ring
from detroot.errors import InfeasibleFactorization, NotASquare, NotEasyCase, PrecondViolated
from detroot.sqrt_engine import (
    CaseTag,
    SqrtConfig,
    classify_case,
    factor_qminus1,
    resolve_zeta,
    sqrt_deterministic,
    sqrt_easy,
    sqrt_mod,
)

from oracles import brute_sqrts, is_prime


def test_factor_examples():
    f = factor_qminus1(41, 10**6)
    assert (f.e, f.odd_primes, f.t) == (3, ((5, 1),), 1)
    f = factor_qminus1(97, 10**6)
    assert (f.e, f.odd_primes, f.t) == (5, ((3, 1),), 1)
    f = factor_qminus1(59, 3)
    assert (f.e, f.odd_primes, f.t) == (1, (), 29)


@given(st.integers(2, 10**12))
def test_factorization_reassembles(k):
    q = 2 * k + 1
    f = factor_qminus1(q, 1000)
    assert f.product() == q - 1
    assert f.t % 2 == 1
    assert all(p <= 1000 for p, _ in f.odd_primes)


def test_sqrt_easy_examples():
    assert sqrt_easy(Ring(7), 2) == (Ring(7)(3), Ring(7)(4))
    assert sqrt_easy(Ring(13), 3) == (Ring(13)(4), Ring(13)(9))
    with pytest.raises(NotEasyCase):
        sqrt_easy(Ring(17), 2)


def test_sqrt_deterministic_worked_example():
    res = sqrt_deterministic(Ring(41), 2)
    assert [r.value for r in res.roots] == [17, 24]
    t = res.trace
    assert (t.branch, t.g, t.k, t.m, t.r, t.j, t.a, t.zeta) == ("IV", 1, 0, 1, 5, 2, 19, 10)


@pytest.mark.parametrize("q", [17, 41, 97, 113, 193, 257, 7681])
def test_square_root_of_one(q):
    assert [r.value for r in sqrt_deterministic(Ring(q), 1).roots] == [1, q - 1]


def test_non_square_rejected():
    with pytest.raises(NotASquare):
        sqrt_deterministic(Ring(41), 3)
    with pytest.raises(PrecondViolated):
        sqrt_deterministic(Ring(41), 0)
    with pytest.raises(PrecondViolated):
        sqrt_deterministic(Ring(43), 4)


def test_classify_examples():
    assert classify_case(97, factor_qminus1(97)) is CaseTag.THREE_SMOOTH
    assert classify_case(337, factor_qminus1(337)) is CaseTag.TOWER_PRIMES
    assert classify_case(7, factor_qminus1(7)) is CaseTag.EASY


@pytest.mark.parametrize("q", [17, 97, 193, 257])
def test_order_four_branch_is_exercised(q):
    branches = {sqrt_deterministic(Ring(q), b).trace.branch for b in {x * x % q for x in range(1, q)}}
    assert "II" in branches


def test_order_r_branch_is_exercised_for_41():
    branches = {sqrt_deterministic(Ring(41), b).trace.branch for b in {x * x % 41 for x in range(1, 41)}}
    assert "IV" in branches


def test_escape_candidate_within_bound():
    for q in (q for q in range(17, 3000, 8) if is_prime(q)):
        t = factor_qminus1(q).t
        for b in {x * x % q for x in range(1, q)}:
            assert sqrt_deterministic(Ring(q), b).trace.candidates <= 2 * t - 1


def test_deterministic_results_and_traces():
    ring = Ring(7681)
    a = sqrt_deterministic(ring, 1234 * 1234)
    b = sqrt_deterministic(ring, 1234 * 1234)
    assert a.roots == b.roots and a.trace == b.trace


def test_ceiling_on_cofactor():
    # q - 1 = 8 * 1000409 with a prime cofactor above the trial-division bound
    q = 8 * 1000409 + 1
    assert is_prime(q)
    with pytest.raises(InfeasibleFactorization):
        sqrt_deterministic(Ring(q), 4, SqrtConfig(bound=1000, t_ceiling=10**5))
    res = sqrt_deterministic(Ring(q), 4, SqrtConfig(bound=1000, t_ceiling=None))
    assert [r.value for r in res.roots] == [2, q - 2]


@pytest.mark.parametrize("strategy", ["search", "standin", "radical_tower", "auto"])
def test_strategies_agree(strategy):
    config = SqrtConfig(zeta_strategy=strategy)
    for q in (97, 337, 1297, 2017, 3457):
        ring = Ring(q)
        for b in list({x * x % q for x in range(1, q)})[:60]:
            assert [r.value for r in sqrt_deterministic(ring, b, config).roots] == brute_sqrts(b, q)


def test_radical_tower_strategy_is_used_when_it_applies():
    # 229 = 1 mod 19, 1 mod 4, 4 mod 9
    zeta, used = resolve_zeta(Ring(229), 19, SqrtConfig(zeta_strategy="radical_tower"))
    assert used == "radical_tower"
    assert zeta.value != 1 and pow(zeta.value, 19, 229) == 1


def test_unknown_strategy_rejected():
    with pytest.raises(PrecondViolated):
        SqrtConfig(zeta_strategy="guess")


@settings(max_examples=200)
@given(st.sampled_from([p for p in range(3, 3000) if is_prime(p)]), st.integers(1, 10**6))
def test_dispatcher_matches_enumeration(p, x):
    if x % p == 0:
        return
    beta = x * x % p
    assert [r.value for r in sqrt_mod(Ring(p), beta).roots] == brute_sqrts(beta, p)


def test_large_prime_square_roots():
    p = 2**127 - 1  # 3 mod 4
    q = 3 * 2**189 + 1  # 1 mod 8
    for modulus in (p, q):
        ring = Ring(modulus)
        for x in (2, 12345, 2**100 + 7):
            beta = x * x % modulus
            roots = [r.value for r in sqrt_mod(ring, beta).roots]
            assert roots == sorted({x % modulus, -x % modulus})
