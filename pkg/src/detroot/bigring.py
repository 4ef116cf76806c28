"""Modular arithmetic over an odd modulus, prime or not.

Values are Python integers, so precision is unbounded. Residues are always
kept in canonical form ``0 <= value < modulus``. A failed inversion modulo a
composite reports the shared factor (:class:`NonInvertible`) instead of
producing a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import EulerAmbiguous, EvenOrTinyModulus, NonInvertible

__all__ = [
    "Ring",
    "Elem",
    "make_ring",
    "modpow",
    "modinv",
    "euler_is_square",
    "inverse_mod",
]


def inverse_mod(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` on plain integers.

    Raises NonInvertible carrying ``gcd(a, m)`` (``m`` itself for a == 0).
    """
    a %= m
    if a == 0:
        raise NonInvertible(m, m)
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NonInvertible(gcd(a, m), m) from None


@dataclass(frozen=True, slots=True)
class Ring:
    """Integers modulo an odd ``modulus >= 3``."""

    modulus: int

    def __post_init__(self):
        m = self.modulus
        if not isinstance(m, int) or isinstance(m, bool):
            raise TypeError(f"modulus must be an int, got {type(m).__name__}")
        if m < 3 or m % 2 == 0:
            raise EvenOrTinyModulus(f"modulus must be odd and >= 3, got {m}")

    def __call__(self, value: int) -> Elem:
        return Elem(value, self)

    @property
    def zero(self) -> Elem:
        return Elem(0, self)

    @property
    def one(self) -> Elem:
        return Elem(1, self)

    def __repr__(self):
        return f"Ring({self.modulus})"


class Elem:
    """A residue class modulo ``ring.modulus``; immutable."""

    __slots__ = ("value", "ring")

    def __init__(self, value: int, ring: Ring):
        object.__setattr__(self, "value", int(value) % ring.modulus)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("Elem is immutable")

    @property
    def modulus(self) -> int:
        return self.ring.modulus

    def _coerce(self, other) -> int:
        if isinstance(other, Elem):
            if other.ring.modulus != self.ring.modulus:
                raise ValueError(
                    f"cannot combine residues mod {self.ring.modulus} and mod {other.ring.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _wrap(self, value: int) -> Elem:
        return Elem(value, self.ring)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.value * inverse_mod(o, self.ring.modulus))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(o * inverse_mod(self.value, self.ring.modulus))

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, exp: int):
        if exp < 0:
            return self._wrap(pow(inverse_mod(self.value, self.ring.modulus), -exp, self.ring.modulus))
        return self._wrap(pow(self.value, exp, self.ring.modulus))

    def __eq__(self, other):
        if isinstance(other, Elem):
            return self.ring.modulus == other.ring.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ring.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ring.modulus))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"{self.value} (mod {self.ring.modulus})"


def make_ring(m: int) -> Ring:
    return Ring(m)


def modpow(base: Elem, exp: int) -> Elem:
    """``base**exp`` by square-and-multiply; ``exp`` must be non-negative."""
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return Elem(pow(base.value, exp, base.ring.modulus), base.ring)


def modinv(a: Elem) -> Elem:
    return Elem(inverse_mod(a.value, a.ring.modulus), a.ring)


def euler_is_square(a: Elem) -> bool:
    """Euler's criterion. Only meaningful when the modulus is prime.

    Returns True for ``a^((m-1)/2) == 1`` and False for ``-1``; any other
    residue proves the modulus composite and raises EulerAmbiguous.
    """
    m = a.ring.modulus
    if a.value == 0:
        raise ValueError("Euler's criterion is undefined for 0")
    r = pow(a.value, (m - 1) // 2, m)
    if r == 1:
        return True
    if r == m - 1:
        return False
    raise EulerAmbiguous(r, m)

