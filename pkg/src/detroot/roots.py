"""Roots of unity and small fixed-size roots.

``find_zeta_r`` and ``find_zeta4`` build primitive roots of unity of order r
(odd prime) or 4 by a bounded search: among ``t + 1`` (resp. ``2t + 1``)
distinct candidates at least one escapes the t-torsion subgroup, and a
suitable power of it has the required order. Candidates are tried in the
order 1, 2, 3, ...

``fixed_sqrt`` computes square roots of small constants such as -1, -3 or
-19. It is a stand-in for a deterministic algorithm with an unconditional
polynomial bound: outside the easy residue classes it runs Tonelli-Shanks
with the least quadratic nonresidue, found by scanning 2, 3, 4, ... That
scan is deterministic, but its polynomial running time rests on the
extended Riemann hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigring import Elem, Ring, euler_is_square
from .errors import (
    InternalContradiction,
    NotASquare,
    NotCubicResidue,
    NoWitnessFound,
    OrderDoesNotDivide,
    PrecondViolated,
    WrongResidueClass,
)

__all__ = [
    "ZetaSpec",
    "ZetaSearch",
    "search_zeta",
    "find_zeta_r",
    "find_zeta4",
    "cube_root",
    "cube_root_class",
    "fixed_sqrt",
    "easy_sqrt",
    "tonelli_shanks",
    "zeta3_standin",
    "zeta4_standin",
    "is_small_prime",
    "least_nonresidue",
]


def is_small_prime(n: int) -> bool:
    """Trial division; for parameters such as the order r, never for moduli."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _split(n: int, r: int) -> tuple[int, int]:
    e = 0
    while n % r == 0:
        n //= r
        e += 1
    return e, n


@dataclass(frozen=True)
class ZetaSpec:
    """Requested root order with ``q - 1 = r**e * t``.

    ``order`` is an odd prime or the literal 4; for order 4 the split is
    ``q - 1 = 2**e * t`` with t odd.
    """

    order: int
    e: int
    t: int

    @classmethod
    def for_modulus(cls, q: int, order: int) -> ZetaSpec:
        base = 2 if order == 4 else order
        e, t = _split(q - 1, base)
        return cls(order, e, t)

    @property
    def base(self) -> int:
        return 2 if self.order == 4 else self.order

    def check(self, q: int) -> None:
        r = self.order
        if r != 4 and (r < 3 or not is_small_prime(r)):
            raise PrecondViolated(f"order must be an odd prime or 4, got {r}")
        if r != 4 and (q - 1) % r:
            raise OrderDoesNotDivide(f"{r} does not divide {q} - 1")
        if self.base ** self.e * self.t != q - 1 or self.t % self.base == 0:
            raise PrecondViolated(f"{self} does not split {q} - 1")


@dataclass(frozen=True)
class ZetaSearch:
    zeta: Elem
    g: int
    k: int


def search_zeta(ring: Ring, spec: ZetaSpec) -> ZetaSearch:
    """Shared search behind :func:`find_zeta_r` and :func:`find_zeta4`.

    Returns the root together with the chosen candidate ``g`` and the
    largest ``k`` with ``g**((q-1)/base**k) == 1``.
    """
    q = ring.modulus
    spec.check(q)
    base, e, t = spec.base, spec.e, spec.t
    if spec.order == 4:
        if e <= 1:
            raise PrecondViolated(f"{q} is not 1 mod 4")
        escape, shift = 2 * t, 2
    else:
        if e == 0:
            raise OrderDoesNotDivide(f"{spec.order} does not divide {q} - 1")
        escape, shift = t, 1

    limit = min(escape + 1, q - 1)
    for g in range(1, limit + 1):
        if pow(g, escape, q) != 1:
            break
    else:
        raise NoWitnessFound(f"all {limit} candidates lie in the {escape}-torsion mod {q}")

    # ladder[i] = g**((q-1)/base**i)
    ladder = [0] * (e + 1)
    ladder[e] = pow(g, t, q)
    for i in range(e - 1, -1, -1):
        ladder[i] = pow(ladder[i + 1], base, q)
    k = next((i for i in range(e, -1, -1) if ladder[i] == 1), None)
    if k is None:
        raise InternalContradiction(f"{g}**({q}-1) != 1 mod {q}")
    if k + shift > e:
        raise InternalContradiction(f"candidate {g} has no usable {spec.order}-part mod {q}")
    return ZetaSearch(ring(ladder[k + shift]), g, k)


def find_zeta_r(ring: Ring, spec: ZetaSpec) -> Elem:
    """Primitive r-th root of unity for an odd prime ``r | q - 1``."""
    if spec.order == 4:
        raise PrecondViolated("use find_zeta4 for order 4")
    return search_zeta(ring, spec).zeta


def find_zeta4(ring: Ring, spec: ZetaSpec) -> Elem:
    """A square root of -1, for ``q = 2**e * t + 1`` with ``e > 1``."""
    if spec.order != 4:
        raise PrecondViolated("find_zeta4 needs order 4")
    return search_zeta(ring, spec).zeta


def cube_root_class(p: int) -> int:
    """``p mod 9`` when cube roots mod ``p`` are easy, else WrongResidueClass."""
    if p % 4 != 1 or p % 9 not in (4, 7):
        raise WrongResidueClass(f"cube roots need p = 1 mod 4 and p = 4, 7 mod 9; got p = {p}")
    return p % 9


def cube_root(ring: Ring, b: Elem | int) -> Elem:
    p = ring.modulus
    cls = cube_root_class(p)
    b = ring(int(b))
    if b.value == 0:
        raise PrecondViolated("cube_root needs a nonzero argument")
    if pow(b.value, (p - 1) // 3, p) != 1:
        raise NotCubicResidue(f"{b.value} is not a cube mod {p}")
    exp = (2 * p + 1) // 9 if cls == 4 else (p + 2) // 9
    return ring(pow(b.value, exp, p))


def easy_sqrt(c: int, p: int) -> int:
    """A square root of the residue ``c`` for ``p`` not 1 mod 8."""
    if p % 4 == 3:
        return pow(c, (p + 1) // 4, p)
    if p % 8 == 5:
        # Atkin
        two_c = 2 * c % p
        u = pow(two_c, (p - 5) // 8, p)
        i = two_c * u * u % p
        return c * u * (i - 1) % p
    raise PrecondViolated(f"{p} = 1 mod 8 has no closed-form square root")


def tonelli_shanks(c: int, p: int, nonresidue: int) -> int:
    e, t = _split(p - 1, 2)
    z = pow(nonresidue, t, p)
    x = pow(c, (t + 1) // 2, p)
    b = pow(c, t, p)
    m = e
    while b != 1:
        i, b2 = 0, b
        while b2 != 1:
            b2 = b2 * b2 % p
            i += 1
            if i == m:
                raise NotASquare(f"{c} is not a square mod {p}")
        s = pow(z, 1 << (m - i - 1), p)
        x = x * s % p
        z = s * s % p
        b = b * z % p
        m = i
    return x


def least_nonresidue(p: int) -> int:
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    return n


def fixed_sqrt(ring: Ring, c: int) -> Elem:
    """``min(x, p - x)`` where ``x**2 == c (mod p)``; ``c`` is a small signed integer."""
    p = ring.modulus
    cv = c % p
    if cv == 0:
        raise PrecondViolated(f"{c} vanishes mod {p}")
    if not euler_is_square(ring(cv)):
        raise NotASquare(f"{c} is not a square mod {p}")
    if p % 8 != 1:
        x = easy_sqrt(cv, p)
    else:
        x = tonelli_shanks(cv, p, least_nonresidue(p))
    if x * x % p != cv:
        raise InternalContradiction(f"square root of {c} mod {p} failed to verify")
    return ring(min(x, p - x))


def zeta4_standin(ring: Ring) -> Elem:
    return fixed_sqrt(ring, -1)


def zeta3_standin(ring: Ring) -> Elem:
    """``(-1 + sqrt(-3)) / 2``."""
    return (fixed_sqrt(ring, -3) - 1) / 2
