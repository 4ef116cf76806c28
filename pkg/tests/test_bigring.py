import pytest
from hypothesis import given
from hypothesis import strategies as st

from detroot.bigring import Elem, Ring, euler_is_square, inverse_mod, make_ring, modinv, modpow
from detroot.errors import EulerAmbiguous, EvenOrTinyModulus, NonInvertible

from oracles import is_prime


def test_make_ring_accepts_odd_moduli():
    assert make_ring(41) == Ring(41)
    assert make_ring(9).modulus == 9


@pytest.mark.parametrize("m", [8, 2, 1, 0, -7])
def test_make_ring_rejects_even_or_tiny(m):
    with pytest.raises(EvenOrTinyModulus):
        make_ring(m)


def test_modpow_examples():
    r = Ring(41)
    assert modpow(r(2), 5) == 32
    assert modpow(r(2), 10) == 40
    assert modpow(r(7), 0) == 1


def test_modpow_rejects_negative_exponent():
    with pytest.raises(ValueError):
        modpow(Ring(41)(2), -1)


def test_modinv_examples():
    assert modinv(Ring(41)(4)) == 31
    assert modinv(Ring(41)(1)) == 1
    assert modinv(Ring(9)(1)) == 1


def test_modinv_reports_shared_factor():
    with pytest.raises(NonInvertible) as info:
        modinv(Ring(9)(3))
    assert info.value.witness == 3
    with pytest.raises(NonInvertible) as info:
        inverse_mod(0, 15)
    assert info.value.witness == 15


def test_euler_examples():
    r = Ring(41)
    assert euler_is_square(r(2)) is True
    assert euler_is_square(r(3)) is False
    assert euler_is_square(r(1)) is True


def test_euler_exposes_composite_modulus():
    # 2^4 = 16 mod 9 is 7, neither 1 nor -1
    with pytest.raises(EulerAmbiguous):
        euler_is_square(Ring(9)(2))


def test_euler_matches_enumeration_for_primes_below_2000():
    for p in range(3, 2000, 2):
        if not is_prime(p):
            continue
        r = Ring(p)
        squares = {x * x % p for x in range(1, p)}
        assert all(euler_is_square(r(a)) == (a in squares) for a in range(1, p)), p


def test_modinv_exhaustive_small_moduli():
    from math import gcd

    for m in (3, 9, 15, 41, 97, 1001, 9999):
        r = Ring(m)
        for a in range(1, m):
            if gcd(a, m) == 1:
                assert (r(a) * modinv(r(a))).value == 1


def test_modpow_matches_repeated_multiplication():
    for m in range(3, 200, 2):
        for base in range(m):
            acc = 1
            for exp in range(50):
                assert modpow(Ring(m)(base), exp).value == acc
                acc = acc * base % m


moduli = st.integers(min_value=1, max_value=10**30).map(lambda k: 2 * k + 1)


@given(moduli, st.integers(), st.integers())
def test_results_are_canonical(m, a, b):
    r = Ring(m)
    x, y = r(a), r(b)
    for z in (x + y, x - y, x * y, -x, x**3, a - y, b * x):
        assert 0 <= z.value < m
    assert x == a
    assert hash(x) == hash(r(a + m))


def test_mixed_moduli_are_rejected():
    with pytest.raises(ValueError):
        Ring(41)(1) + Ring(43)(1)


def test_elem_is_immutable():
    x = Ring(41)(5)
    with pytest.raises(AttributeError):
        x.value = 6
    assert isinstance(x, Elem)
