"""Deterministic square roots over prime fields without a known nonresidue.

Write ``q - 1 = 2**e * p1**e1 * ... * pn**en * t``. Working in the group of
:mod:`detroot.galpha`, the algorithm finds an element ``[a]`` of order 4 or
of odd prime order r and matches it against a root of unity ``zeta``; one of
``a * (zeta**j - 1) / (zeta**j + 1)`` with ``1 <= j <= (r - 1) / 2`` is a
square root of beta. Every choice is made in a fixed order, so the result and
its trace depend only on the inputs.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .bigring import Elem, Ring, euler_is_square, inverse_mod
from .errors import (
    InfeasibleFactorization,
    InternalContradiction,
    NotASquare,
    NotEasyCase,
    PrecondViolated,
)
from .galpha import _gpow
from .roots import (
    ZetaSpec,
    easy_sqrt,
    find_zeta4,
    find_zeta_r,
    zeta3_standin,
    zeta4_standin,
)

__all__ = [
    "Factorization",
    "SqrtConfig",
    "CaseTag",
    "SqrtTrace",
    "SqrtResult",
    "factor_qminus1",
    "sqrt_easy",
    "sqrt_deterministic",
    "sqrt_mod",
    "classify_case",
    "resolve_zeta",
]

DEFAULT_BOUND = 10**6
DEFAULT_T_CEILING = 2**24
STRATEGIES = ("search", "radical_tower", "standin", "auto")


@dataclass(frozen=True)
class Factorization:
    """``q - 1 = 2**e * prod(p**k for p, k in odd_primes) * t``."""

    q: int
    e: int
    odd_primes: tuple[tuple[int, int], ...]
    t: int
    bound: int

    def product(self) -> int:
        n = 2**self.e * self.t
        for p, k in self.odd_primes:
            n *= p**k
        return n


@lru_cache(maxsize=4096)
def factor_qminus1(q: int, bound: int = DEFAULT_BOUND) -> Factorization:
    """Trial-divide ``q - 1`` by 2 and by odd numbers up to ``bound``.

    Prime powers found are extracted completely; what is left, including any
    prime above the bound, becomes the cofactor ``t``.
    """
    if q < 5 or q % 2 == 0:
        raise PrecondViolated(f"q must be odd and >= 5, got {q}")
    if bound < 3:
        raise PrecondViolated("trial-division bound must be at least 3")
    rest = q - 1
    e = (rest & -rest).bit_length() - 1
    rest >>= e
    found = []
    d = 3
    while d <= bound and d * d <= rest:
        if rest % d == 0:
            k = 0
            while rest % d == 0:
                rest //= d
                k += 1
            found.append((d, k))
        d += 2
    if 1 < rest <= bound and d * d > rest:
        # leftover is prime
        found.append((rest, 1))
        rest = 1
    return Factorization(q, e, tuple(found), rest, bound)


class CaseTag(enum.Enum):
    # values are the tags printed in traces
    EASY = "Easy"
    THREE_SMOOTH = "Thm2_1"
    TOWER_PRIMES = "Thm2_2"
    SMALL_PRIME_POWER = "Thm2_3"
    GENERAL = "General"


def is_tower_prime(p: int) -> bool:
    """True for primes of the form ``2 * 3**k + 1`` (k >= 0)."""
    if p < 3 or (p - 1) % 2:
        return False
    m = (p - 1) // 2
    while m % 3 == 0:
        m //= 3
    return m == 1


def classify_case(q: int, f: Factorization) -> CaseTag:
    """First matching tag: easy residue class, q - 1 = 2^e 3^k, odd part built
    from primes 2*3^k + 1, one small prime power with small cofactor, general.

    "Small" means ``r + t <= bitlen(q)**2``.
    """
    if q % 8 != 1:
        return CaseTag.EASY
    odd = [p for p, _ in f.odd_primes]
    if q % 12 == 1 and odd == [3]:
        return CaseTag.THREE_SMOOTH
    if q % 36 in (13, 25) and odd and all(is_tower_prime(p) for p in odd):
        return CaseTag.TOWER_PRIMES
    small = q.bit_length() ** 2
    if 2 + (q - 1) // 2**f.e <= small:
        return CaseTag.SMALL_PRIME_POWER
    for p, k in f.odd_primes:
        if p + (q - 1) // p**k <= small:
            return CaseTag.SMALL_PRIME_POWER
    return CaseTag.GENERAL


@dataclass(frozen=True)
class SqrtConfig:
    """``zeta_strategy`` is one name for every order or a mapping order -> name.

    Names: ``search`` (bounded search), ``standin`` (closed forms from
    square roots of -1 and -3), ``radical_tower`` (nested cube roots, for
    orders ``2 * 3**k + 1``), ``auto`` (pick by :class:`CaseTag`). A strategy
    that does not apply to an order falls back to ``search``.
    """

    bound: int = DEFAULT_BOUND
    zeta_strategy: str | Mapping[int, str] = "search"
    # None lifts the ceiling on the cofactor t
    t_ceiling: int | None = DEFAULT_T_CEILING

    def __post_init__(self):
        if self.bound < 3:
            raise PrecondViolated("bound must be at least 3")
        names = (
            self.zeta_strategy.values()
            if isinstance(self.zeta_strategy, Mapping)
            else [self.zeta_strategy]
        )
        for name in names:
            if name not in STRATEGIES:
                raise PrecondViolated(f"unknown zeta strategy {name!r}")

    def strategy_for(self, order: int) -> str:
        if isinstance(self.zeta_strategy, Mapping):
            return self.zeta_strategy.get(order, "search")
        return self.zeta_strategy


@dataclass(frozen=True)
class SqrtTrace:
    branch: str
    candidates: int = 0
    g: int | None = None
    k: int | None = None
    m: int | None = None
    r: int | None = None
    j: int | None = None
    a: int | None = None
    zeta: int | None = None
    strategy: str | None = None

    def as_dict(self) -> dict:
        return {
            key: (str(val) if isinstance(val, int) and not isinstance(val, bool) else val)
            for key, val in asdict(self).items()
            if val is not None
        }


@dataclass(frozen=True)
class SqrtResult:
    roots: tuple[Elem, Elem]
    trace: SqrtTrace = field(compare=False)


def _ordered(ring: Ring, x: int) -> tuple[Elem, Elem]:
    y = -x % ring.modulus
    return (ring(min(x, y)), ring(max(x, y)))


def _nonzero_square(ring: Ring, beta) -> Elem:
    beta = ring(int(beta))
    if beta.value == 0:
        raise PrecondViolated("beta must be nonzero")
    if not euler_is_square(beta):
        raise NotASquare(f"{beta.value} is not a square mod {ring.modulus}")
    return beta


def sqrt_easy(ring: Ring, beta: Elem | int) -> tuple[Elem, Elem]:
    """Closed-form roots for ``p = 3 mod 4`` and ``p = 5 mod 8``."""
    p = ring.modulus
    if p % 8 == 1:
        raise NotEasyCase(f"{p} = 1 mod 8")
    beta = _nonzero_square(ring, beta)
    x = easy_sqrt(beta.value, p)
    if x * x % p != beta.value:
        raise InternalContradiction(f"closed-form root of {beta.value} mod {p} does not square back")
    return _ordered(ring, x)


def _auto_strategy(q: int, bound: int) -> str:
    case = classify_case(q, factor_qminus1(q, bound))
    if case is CaseTag.THREE_SMOOTH:
        return "standin"
    if case is CaseTag.TOWER_PRIMES:
        return "radical_tower"
    return "search"


@lru_cache(maxsize=4096)
def _zeta_cached(q: int, order: int, strategy: str, bound: int) -> tuple[int, str]:
    ring = Ring(q)
    if strategy == "auto":
        strategy = _auto_strategy(q, bound)
    if strategy in ("standin", "radical_tower"):
        if order == 4:
            return zeta4_standin(ring).value, strategy
        if order == 3:
            return zeta3_standin(ring).value, strategy
    if strategy == "radical_tower" and is_tower_prime(order) and q % 4 == 1 and q % 9 in (4, 7):
        from .periods import SUPPORTED_Q, build_tower, eval_mod_p

        if order in SUPPORTED_Q:
            return eval_mod_p(build_tower(order), ring).value, strategy
    spec = ZetaSpec.for_modulus(q, order)
    if order == 4:
        return find_zeta4(ring, spec).value, "search"
    return find_zeta_r(ring, spec).value, "search"


def resolve_zeta(ring: Ring, order: int, config: SqrtConfig | None = None) -> tuple[Elem, str]:
    """Primitive root of unity of ``order`` (4 or an odd prime) per ``config``.

    Returns the root and the name of the strategy that produced it.
    """
    config = config or SqrtConfig()
    value, used = _zeta_cached(ring.modulus, order, config.strategy_for(order), config.bound)
    return ring(value), used


def _ladder(m: int, beta: int, top: int | None, base: int, length: int) -> list:
    # out[i] = top ** (base ** (length - i)); out[length] = top
    out = [None] * (length + 1)
    out[length] = top
    for i in range(length - 1, -1, -1):
        out[i] = _gpow(m, beta, out[i + 1], base)
    return out


def sqrt_deterministic(
    ring: Ring, beta: Elem | int, config: SqrtConfig | None = None
) -> SqrtResult:
    """Both square roots of ``beta`` for ``q = 1 mod 8``, ordered (min, max).

    Over a composite modulus the same steps run; arithmetic that cannot
    happen in a field raises a :class:`~detroot.errors.CompositeSignal`.
    """
    config = config or SqrtConfig()
    q = ring.modulus
    if q % 8 != 1:
        raise PrecondViolated(f"{q} is not 1 mod 8; use sqrt_easy")
    beta = _nonzero_square(ring, beta)
    b = beta.value
    f = factor_qminus1(q, config.bound)
    t = f.t
    if config.t_ceiling is not None and t > config.t_ceiling:
        raise InfeasibleFactorization(f"cofactor t = {t} exceeds the ceiling {config.t_ceiling}")

    # Step I
    n_cand = min(2 * t - 1, q - 1)
    for g in range(1, n_cand + 1):
        if (g * g - b) % q == 0:
            return SqrtResult(_ordered(ring, g), SqrtTrace("I.1", candidates=g, g=g))
        if _gpow(q, b, g, 2 * t) is not None:
            break
    else:
        raise InternalContradiction(f"no candidate below {n_cand + 1} escapes the {2 * t}-torsion")
    scanned = g

    # Step II
    odd_part = (q - 1) >> f.e
    twos = _ladder(q, b, _gpow(q, b, g, odd_part), 2, f.e)
    if twos[f.e - 1] is not None:
        k = next((i for i in range(f.e, -1, -1) if twos[i] is None), None)
        if k is None:
            raise InternalContradiction(f"[{g}]^({q}-1) is not the identity")
        a = twos[k + 2]
        zeta, used = resolve_zeta(ring, 4, config)
        x = a * zeta.value % q
        if (x * x - b) % q:
            raise InternalContradiction("order-4 branch produced a non-root")
        trace = SqrtTrace("II", scanned, g, k, r=4, a=a, zeta=zeta.value, strategy=used)
        return SqrtResult(_ordered(ring, x), trace)

    # Step III
    for m_index, (r, e_r) in enumerate(f.odd_primes, start=1):
        top = _gpow(q, b, g, (q - 1) // r**e_r)
        if top is not None:
            break
    else:
        raise InternalContradiction(f"[{g}] has order dividing 2t, contradicting Step I")

    # Step IV
    ladder = _ladder(q, b, top, r, e_r)
    k = next((i for i in range(e_r, -1, -1) if ladder[i] is None), None)
    if k is None:
        raise InternalContradiction(f"[{g}]^({q}-1) is not the identity")
    a = ladder[k + 1]
    zeta, used = resolve_zeta(ring, r, config)
    z = 1
    for j in range(1, (r - 1) // 2 + 1):
        z = z * zeta.value % q
        num = a * (z - 1) % q
        den = (z + 1) % q
        if (num * num - b * den * den) % q == 0:
            x = num * inverse_mod(den, q) % q
            if (x * x - b) % q:
                raise InternalContradiction("order-r branch produced a non-root")
            trace = SqrtTrace("IV", scanned, g, k, m_index, r, j, a, zeta.value, used)
            return SqrtResult(_ordered(ring, x), trace)
    raise InternalContradiction(f"no j in 1..{(r - 1) // 2} matches the order-{r} element")


def sqrt_mod(ring: Ring, beta: Elem | int, config: SqrtConfig | None = None) -> SqrtResult:
    """Dispatch to the closed forms or to :func:`sqrt_deterministic`."""
    if ring.modulus % 8 != 1:
        return SqrtResult(sqrt_easy(ring, beta), SqrtTrace("easy"))
    return sqrt_deterministic(ring, beta, config)
