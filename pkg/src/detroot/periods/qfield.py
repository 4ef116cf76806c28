"""Exact arithmetic in Q(sqrt(-q), sqrt(-3)).

An element is ``c0 + c1*u + c2*v + c3*w`` with ``u = sqrt(-q)``,
``v = sqrt(-3)`` and ``w = sqrt(3q)``. The complex embedding is
``u = i*sqrt(q)``, ``v = i*sqrt(3)`` and ``w`` positive real, so

    u*v = -w,   u*w = q*v,   v*w = 3*u.

The conjugation ``tau`` fixes ``u`` and negates ``v`` and ``w``; it is the
automorphism that swaps the two primitive cube roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..bigring import Ring
from ..roots import fixed_sqrt

__all__ = ["QFElem"]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QFElem:
    q: int
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("QFElem needs four coefficients")
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @classmethod
    def of(cls, q: int, c0=0, c1=0, c2=0, c3=0) -> QFElem:
        return cls(q, (c0, c1, c2, c3))

    @classmethod
    def from_quarters(cls, q: int, nums) -> QFElem:
        return cls(q, tuple(Fraction(int(n), 4) for n in nums))

    def quarters(self) -> tuple[int, int, int, int]:
        """Numerators over the common denominator 4."""
        out = []
        for c in self.coeffs:
            scaled = c * 4
            if scaled.denominator != 1:
                raise ValueError(f"coefficient {c} has a denominator not dividing 4")
            out.append(int(scaled))
        return tuple(out)

    def _check(self, other: QFElem) -> None:
        if other.q != self.q:
            raise ValueError(f"cannot combine elements for q = {self.q} and q = {other.q}")

    def _lift(self, other) -> QFElem:
        if isinstance(other, QFElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return QFElem.of(self.q, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QFElem(self.q, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return QFElem(self.q, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        q = self.q
        a0, a1, a2, a3 = self.coeffs
        b0, b1, b2, b3 = o.coeffs
        return QFElem(
            q,
            (
                a0 * b0 - q * a1 * b1 - 3 * a2 * b2 + 3 * q * a3 * b3,
                a0 * b1 + a1 * b0 + 3 * (a2 * b3 + a3 * b2),
                a0 * b2 + a2 * b0 + q * (a1 * b3 + a3 * b1),
                a0 * b3 + a3 * b0 - (a1 * b2 + a2 * b1),
            ),
        )

    __rmul__ = __mul__

    def tau(self) -> QFElem:
        c0, c1, c2, c3 = self.coeffs
        return QFElem(self.q, (c0, c1, -c2, -c3))

    @property
    def in_quadratic_subfield(self) -> bool:
        """True when the element lies in Q(sqrt(-q))."""
        return self.coeffs[2] == 0 and self.coeffs[3] == 0

    def to_complex(self, ctx, conjugate: bool = False):
        """Embed into an mpmath context; ``conjugate`` applies tau first."""
        c0, c1, c2, c3 = (ctx.mpf(c.numerator) / c.denominator for c in self.coeffs)
        if conjugate:
            c2, c3 = -c2, -c3
        sq = ctx.sqrt(self.q)
        s3 = ctx.sqrt(3)
        return ctx.mpc(c0 + c3 * s3 * sq, c1 * sq + c2 * s3)

    def mod_p(self, ring: Ring, sqrt_mq: int | None = None, sqrt_m3: int | None = None) -> int:
        """Image in F_p, sending ``u`` and ``v`` to the given square roots."""
        p = ring.modulus
        if sqrt_mq is None:
            sqrt_mq = fixed_sqrt(ring, -self.q).value
        if sqrt_m3 is None:
            sqrt_m3 = fixed_sqrt(ring, -3).value
        w = -sqrt_mq * sqrt_m3
        total = 0
        for c, b in zip(self.coeffs, (1, sqrt_mq, sqrt_m3, w)):
            total += c.numerator * b * pow(c.denominator, -1, p)
        return total % p

    def __str__(self):
        names = ("", f"sqrt(-{self.q})", "sqrt(-3)", f"sqrt({3 * self.q})")
        try:
            nums, den = self.quarters(), 4
        except ValueError:
            return repr(self)
        g = gcd(*nums, den)
        nums, den = [n // g for n in nums], den // g
        parts = []
        for n, name in zip(nums, names):
            if n == 0:
                continue
            term = str(abs(n)) if not name else (name if abs(n) == 1 else f"{abs(n)}*{name}")
            sign = "-" if n < 0 else "+"
            parts.append((sign, term))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        if den != 1:
            text = f"({text})/{den}"
        return text
