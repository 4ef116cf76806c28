"""A group isomorphic to the multiplicative group, computable without alpha.

Fix a square ``beta = alpha**2``. The elements are ``[a]`` for residues
``a != +-alpha`` together with the identity ``[inf]``; the law is

    [a] * [inf] = [a],   [a] * [-a] = [inf],
    [a1] * [a2] = [(a1*a2 + beta) / (a1 + a2)].

Only ``beta`` enters the law, so the group can be computed while
``alpha`` stays unknown. The map ``[a] -> (a + alpha) / (a - alpha)`` is an
isomorphism onto the units; :func:`psi` and :func:`psi_inv` implement it and
its inverse for tests, where ``alpha`` is known.

Over a composite modulus the same formulas are evaluated verbatim, and a
failed division surfaces as :class:`~detroot.errors.NonInvertible`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigring import Elem, Ring, euler_is_square, inverse_mod
from .errors import NotASquare, PrecondViolated

__all__ = [
    "GroupCtx",
    "GElem",
    "INFINITY",
    "RootFound",
    "lift",
    "star",
    "gpow",
    "psi",
    "psi_inv",
]


@dataclass(frozen=True, slots=True)
class GElem:
    """``[a]`` for an integer residue ``a``, or the identity when ``a is None``."""

    a: int | None

    @property
    def is_infinity(self) -> bool:
        return self.a is None

    def __repr__(self):
        return "[inf]" if self.a is None else f"[{self.a}]"


INFINITY = GElem(None)


@dataclass(frozen=True, slots=True)
class RootFound:
    """``lift`` hit ``a`` with ``a**2 == beta``: a square root found by accident."""

    root: Elem


@dataclass(frozen=True)
class GroupCtx:
    """The group attached to ``beta`` over ``ring``.

    ``strict`` runs Euler's criterion on ``beta`` (prime moduli only). The
    Proth prover works over Z/N of unknown primality and passes
    ``strict=False``.
    """

    ring: Ring
    beta: Elem
    strict: bool = True

    def __post_init__(self):
        beta = self.beta
        if isinstance(beta, int):
            beta = self.ring(beta)
            object.__setattr__(self, "beta", beta)
        if beta.ring.modulus != self.ring.modulus:
            raise ValueError("beta lives in a different ring")
        if beta.value == 0:
            raise PrecondViolated("beta must be nonzero")
        if self.strict and not euler_is_square(beta):
            raise NotASquare(f"{beta.value} is not a square mod {self.ring.modulus}")

    @property
    def modulus(self) -> int:
        return self.ring.modulus


def lift(ctx: GroupCtx, a: Elem | int) -> GElem | RootFound:
    m = ctx.modulus
    value = a.value if isinstance(a, Elem) else a % m
    if (value * value - ctx.beta.value) % m == 0:
        return RootFound(ctx.ring(value))
    return GElem(value)


def _star(m: int, beta: int, a1: int | None, a2: int | None) -> int | None:
    if a1 is None:
        return a2
    if a2 is None:
        return a1
    s = (a1 + a2) % m
    if s == 0:
        return None
    return (a1 * a2 + beta) * inverse_mod(s, m) % m


def _gpow(m: int, beta: int, a: int | None, k: int) -> int | None:
    # left-to-right binary powering
    if k < 0:
        raise ValueError("exponent must be non-negative")
    if k == 0 or a is None:
        return None
    acc = a
    for bit in bin(k)[3:]:
        if acc is not None:
            if acc == 0:
                acc = None
            else:
                acc = (acc * acc + beta) * inverse_mod(2 * acc, m) % m
        if bit == "1":
            acc = _star(m, beta, acc, a)
    return acc


def star(ctx: GroupCtx, x: GElem, y: GElem) -> GElem:
    return GElem(_star(ctx.modulus, ctx.beta.value, x.a, y.a))


def gpow(ctx: GroupCtx, x: GElem, k: int) -> GElem:
    """``x`` composed with itself ``k`` times; ``k == 0`` gives the identity."""
    return GElem(_gpow(ctx.modulus, ctx.beta.value, x.a, k))


def psi(alpha: Elem, x: GElem) -> Elem:
    """Test oracle: the isomorphism onto the units, parametrised by alpha."""
    ring = alpha.ring
    if x.a is None:
        return ring.one
    return (ring(x.a) + alpha) / (ring(x.a) - alpha)


def psi_inv(alpha: Elem, b: Elem) -> GElem:
    """Test oracle: inverse of :func:`psi`."""
    if b.value == 0:
        raise ValueError("psi_inv is defined on units only")
    if b.value == 1:
        return INFINITY
    return GElem((alpha * (b + 1) / (b - 1)).value)
