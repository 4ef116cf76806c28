import random

import pytest

from detroot.bigring import Ring
from detroot.errors import NotCubicResidue, OrderDoesNotDivide, PrecondViolated, WrongResidueClass
from detroot.roots import ZetaSpec, cube_root, find_zeta4, find_zeta_r, fixed_sqrt, search_zeta

from oracles import is_prime, mult_order


def test_find_zeta_r_examples():
    assert find_zeta_r(Ring(13), ZetaSpec(3, 1, 4)) == 3
    assert find_zeta_r(Ring(41), ZetaSpec(5, 1, 8)) == 10
    with pytest.raises(OrderDoesNotDivide):
        find_zeta_r(Ring(13), ZetaSpec.for_modulus(13, 5))


def test_find_zeta4_examples():
    assert find_zeta4(Ring(17), ZetaSpec(4, 4, 1)) == 4
    assert find_zeta4(Ring(41), ZetaSpec(4, 3, 5)) == 32
    with pytest.raises(PrecondViolated):
        find_zeta4(Ring(7), ZetaSpec.for_modulus(7, 4))


def test_search_reports_candidate():
    found = search_zeta(Ring(17), ZetaSpec(4, 4, 1))
    assert (found.g, found.k, found.zeta.value) == (2, 1, 4)


def test_spec_must_split_q_minus_1():
    with pytest.raises(PrecondViolated):
        find_zeta_r(Ring(13), ZetaSpec(3, 1, 5))
    with pytest.raises(PrecondViolated):
        find_zeta_r(Ring(13), ZetaSpec(9, 0, 12))


def test_cube_root_examples():
    assert cube_root(Ring(13), 5) == 8
    assert cube_root(Ring(13), 1) == 1
    with pytest.raises(NotCubicResidue):
        cube_root(Ring(13), 6)
    with pytest.raises(WrongResidueClass):
        cube_root(Ring(7), 1)


def test_fixed_sqrt_examples():
    assert fixed_sqrt(Ring(17), -1) == 4
    assert fixed_sqrt(Ring(7), 2) == 3
    assert fixed_sqrt(Ring(13), -3) == 6


PRIMES = [p for p in range(5, 5000) if is_prime(p)]


def _odd_prime_factors(n):
    return [d for d in range(3, n + 1, 2) if n % d == 0 and is_prime(d)]


def test_zeta_r_has_exact_order():
    for q in PRIMES:
        for r in _odd_prime_factors(q - 1):
            z = find_zeta_r(Ring(q), ZetaSpec.for_modulus(q, r)).value
            assert mult_order(z, q) == r, (q, r, z)


def test_zeta4_squares_to_minus_one():
    for q in PRIMES:
        if q % 4 == 1:
            z = find_zeta4(Ring(q), ZetaSpec.for_modulus(q, 4)).value
            assert z * z % q == q - 1


def test_cube_roots_for_admissible_primes():
    for p in PRIMES:
        if p % 4 == 1 and p % 9 in (4, 7):
            ring = Ring(p)
            for b in {pow(x, 3, p) for x in range(1, p)}:
                assert pow(cube_root(ring, b).value, 3, p) == b


def test_fixed_sqrt_random_primes():
    rng = random.Random(20240611)
    primes = []
    while len(primes) < 100:
        p = rng.randrange(5, 10**6) | 1
        if is_prime(p):
            primes.append(p)
    for p in primes:
        ring = Ring(p)
        for c in (-1, 2, -2, 3, -3, 5, -7, -19, 57):
            if c % p and pow(c % p, (p - 1) // 2, p) == 1:
                x = fixed_sqrt(ring, c).value
                assert x * x % p == c % p
                assert x <= p - x


def test_outputs_are_deterministic():
    ring = Ring(4441)
    spec = ZetaSpec.for_modulus(4441, 37)
    assert find_zeta_r(ring, spec) == find_zeta_r(ring, spec)
    assert find_zeta4(ring, ZetaSpec.for_modulus(4441, 4)) == find_zeta4(ring, ZetaSpec.for_modulus(4441, 4))
    assert fixed_sqrt(ring, -3) == fixed_sqrt(ring, -3)
