"""Desk-scale acceptance suites, shared by ``detroot selftest`` and the test suite.

Each suite compares library output against an independent oracle
(exhaustive enumeration, trial division, exact constants) and returns a
:class:`SuiteResult`. The scaling bench only reports timings.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from .bigring import Ring
from .errors import NotEasyCase, NotProthForm, PrecondViolated
from .galpha import _star
from .periods import QFElem, build_tower, eval_mod_p
from .proth import Prime, parse_proth, prove, verify_certificate
from .roots import ZetaSpec, cube_root, find_zeta4, find_zeta_r, is_small_prime
from .sqrt_engine import sqrt_deterministic, sqrt_easy, sqrt_mod

__all__ = [
    "SuiteResult",
    "BenchResult",
    "SUITES",
    "primes_below",
    "run_suites",
    "scaling_bench",
    "golden_q19",
]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.cases} cases in {self.seconds:.2f}s"
        return f"{text} ({self.detail})" if self.detail else text


class _Failure(Exception):
    pass


def primes_below(n: int) -> list[int]:
    if n < 3:
        return []
    sieve = bytearray([1]) * n
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _square_table(p: int) -> dict[int, list[int]]:
    table: dict[int, list[int]] = {}
    for x in range(1, p):
        table.setdefault(x * x % p, []).append(x)
    return table


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise _Failure(message)


def sqrt_exhaustive(max_prime: int) -> int:
    cases = 0
    for p in primes_below(max_prime):
        if p % 8 != 1:
            continue
        ring = Ring(p)
        for beta, xs in _square_table(p).items():
            roots = [r.value for r in sqrt_deterministic(ring, beta).roots]
            _expect(roots == xs, f"p={p} beta={beta}: got {roots}, expected {xs}")
            cases += 1
    return cases


def dispatcher_totality(max_prime: int) -> int:
    cases = 0
    for p in primes_below(max_prime):
        if p == 2:
            continue
        ring = Ring(p)
        for beta, xs in _square_table(p).items():
            working = 0
            try:
                working += [r.value for r in sqrt_easy(ring, beta)] == xs
            except NotEasyCase:
                pass
            if p % 8 == 1:
                working += [r.value for r in sqrt_deterministic(ring, beta).roots] == xs
            else:
                try:
                    sqrt_deterministic(ring, beta)
                    working += 1
                except PrecondViolated:
                    pass
            _expect(working == 1, f"p={p} beta={beta}: {working} paths produced a root")
            _expect([r.value for r in sqrt_mod(ring, beta).roots] == xs, f"sqrt_mod p={p} beta={beta}")
            cases += 1
    return cases


def group_isomorphism(primes=(17, 41, 73, 97)) -> int:
    """The map [a] -> (a + alpha)/(a - alpha) is a bijective homomorphism onto the units."""
    cases = 0
    for p in primes:
        inv = [0] + [pow(x, -1, p) for x in range(1, p)]
        for alpha in range(1, p):
            beta = alpha * alpha % p
            elems = [None] + [a for a in range(p) if a not in (alpha, p - alpha)]
            image = {None: 1}
            for a in elems[1:]:
                image[a] = (a + alpha) * inv[(a - alpha) % p] % p
            _expect(sorted(image.values()) == list(range(1, p)), f"p={p} alpha={alpha}: not a bijection")
            for x in elems:
                for y in elems:
                    z = _star(p, beta, x, y)
                    _expect(
                        image[z] == image[x] * image[y] % p,
                        f"p={p} alpha={alpha}: psi([{x}]*[{y}]) != psi([{x}]) psi([{y}])",
                    )
                    cases += 1
    return cases


def proth_equivalence(max_proth: int) -> int:
    cases = 0
    for N in range(5, max_proth, 2):
        try:
            parse_proth(N)
        except NotProthForm:
            continue
        verdict = prove(N)
        is_prime = is_small_prime(N)
        _expect(isinstance(verdict, Prime) == is_prime, f"N={N}: verdict {verdict}")
        if isinstance(verdict, Prime):
            _expect(verify_certificate(verdict.certificate), f"N={N}: certificate rejected")
            chain = verdict.chain
            _expect(chain[0] ** 2 % N == N - 1, f"N={N}: chain does not start at sqrt(-1)")
            _expect(
                all(b * b % N == a for a, b in zip(chain, chain[1:])), f"N={N}: chain breaks"
            )
        cases += 1
    return cases


def golden_q19() -> dict[str, tuple[QFElem | None, QFElem]]:
    """Computed vs. exact published value for each q = 19 constant."""
    q = 19

    def qf(*c):
        return QFElem.of(q, *(Fraction(x) for x in c))

    v = qf(0, 0, 1)

    def split(total: QFElem, diff: QFElem) -> tuple[QFElem, QFElem]:
        # x and y from x + y and (x - y)/sqrt(-3)
        return (total + v * diff) * Fraction(1, 2), (total - v * diff) * Fraction(1, 2)

    tower = build_tower(q)
    top = tower.levels[1].nodes
    x0, x1 = split(qf("19/2", "-17/2"), qf("-57/2", "-9/2"))
    y1, y2 = split(qf(38, -1), qf(0, 3))
    x2, x5 = split(qf("-1007/2", "4373/2"), qf("-10659/2", "-99/2"))
    x3, x4 = split(qf(1292, -1121), qf(2850, 171))
    pair = next((r.product for r in tower.relations if (r.left, r.right) == (1, 2)), None)
    return {
        "f0 orbit sum": (top[0].sum, qf("-1/2", "1/2")),
        "x0": (top[0].cube_args[0], x0),
        "x1": (top[0].cube_args[1], x1),
        "y1": (top[1].sum, y1),
        "y2": (top[2].sum, y2),
        "x2": (top[1].cube_args[0], qf("-1007/4", "4373/4", "-10659/4", "99/4")),
        "x3": (top[1].cube_args[1], x3),
        "x4": (top[2].cube_args[0], x4),
        "x5": (top[2].cube_args[1], x5),
        "x2^(1/3) x5^(1/3)": (pair, qf(-114, -4)),
        "x2 via x2+x5 and (x2-x5)/sqrt(-3)": (top[1].cube_args[0], x2),
    }


def golden_constants() -> int:
    cases = 0
    for name, (got, want) in golden_q19().items():
        _expect(got == want, f"{name}: got {got}, expected {want}")
        cases += 1
    return cases


def admissible_primes(q: int, count: int) -> list[int]:
    """Primes p = 1 mod q with p = 1 mod 4 and p = 4, 7 mod 9, ascending."""
    out = []
    p = q + 1
    while len(out) < count:
        if p % 4 == 1 and p % 9 in (4, 7) and is_small_prime(p):
            out.append(p)
        p += q
    return out


def tower_cross_check(qs=(7, 19), per_q: int = 5) -> int:
    cases = 0
    for q in qs:
        tower = build_tower(q)
        for p in admissible_primes(q, per_q):
            ring = Ring(p)
            z = eval_mod_p(tower, ring).value
            _expect(z != 1 and pow(z, q, p) == 1, f"q={q} p={p}: {z} has the wrong order")
            zeta = find_zeta_r(ring, ZetaSpec.for_modulus(p, q)).value
            powers = {pow(zeta, k, p) for k in range(1, q)}
            _expect(z in powers, f"q={q} p={p}: {z} is not a power of {zeta}")
            cases += 1
    return cases


def _odd_prime_factors(n: int) -> list[int]:
    out, d = [], 3
    while n % 2 == 0:
        n //= 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        out.append(n)
    return out


def _has_order(x: int, r: int, p: int) -> bool:
    # r prime
    return x != 1 and pow(x, r, p) == 1


def root_of_unity_suites(max_prime: int) -> int:
    cases = 0
    for p in primes_below(max_prime):
        if p < 5:
            continue
        ring = Ring(p)
        for r in _odd_prime_factors(p - 1):
            zeta = find_zeta_r(ring, ZetaSpec.for_modulus(p, r)).value
            _expect(_has_order(zeta, r, p), f"find_zeta_r p={p} r={r}: {zeta}")
            cases += 1
        if p % 4 == 1:
            i = find_zeta4(ring, ZetaSpec.for_modulus(p, 4)).value
            _expect(i * i % p == p - 1, f"find_zeta4 p={p}: {i}")
            cases += 1
        if p % 4 == 1 and p % 9 in (4, 7):
            for b in {pow(x, 3, p) for x in range(1, p)}:
                c = cube_root(ring, b).value
                _expect(pow(c, 3, p) == b, f"cube_root p={p} b={b}: {c}")
                cases += 1
    return cases


SUITES: dict[str, Callable[[int, int], int]] = {
    "sqrt-exhaustive": lambda max_prime, max_proth: sqrt_exhaustive(max_prime),
    "dispatcher-totality": lambda max_prime, max_proth: dispatcher_totality(max_prime),
    "group-isomorphism": lambda max_prime, max_proth: group_isomorphism(),
    "proth-equivalence": lambda max_prime, max_proth: proth_equivalence(max_proth),
    "tower-golden-q19": lambda max_prime, max_proth: golden_constants(),
    "tower-cross-check": lambda max_prime, max_proth: tower_cross_check(),
    "roots-of-unity": lambda max_prime, max_proth: root_of_unity_suites(max_prime),
}


def run_suite(name: str, max_prime: int = 5000, max_proth: int = 10**6) -> SuiteResult:
    start = time.perf_counter()
    try:
        cases = SUITES[name](max_prime, max_proth)
    except _Failure as exc:
        return SuiteResult(name, False, 0, time.perf_counter() - start, str(exc))
    except Exception as exc:  # a crash is a failure of the suite, not of the runner
        return SuiteResult(name, False, 0, time.perf_counter() - start, f"{type(exc).__name__}: {exc}")
    return SuiteResult(name, True, cases, time.perf_counter() - start)


def run_suites(
    max_prime: int = 5000, max_proth: int = 10**6, names=None
) -> list[SuiteResult]:
    return [run_suite(name, max_prime, max_proth) for name in (names or SUITES)]


# exponents k with 3 * 2**k + 1 prime
PROTH_T3_EXPONENTS = (1, 2, 5, 6, 8, 12, 18, 30, 36, 41, 66, 189, 201, 209, 276, 353, 408, 438, 534)


@dataclass
class BenchResult:
    points: list[tuple[int, float]] = field(default_factory=list)  # (bits, seconds)
    slope: float | None = None

    def lines(self) -> list[str]:
        out = [f"  {bits:5d} bits  {secs * 1000:10.2f} ms" for bits, secs in self.points]
        if self.slope is not None:
            out.append(f"  log-log slope of time against bit length: {self.slope:.2f}")
        return out


def _fit_slope(points: list[tuple[int, float]]) -> float | None:
    pts = [(math.log(b), math.log(s)) for b, s in points if s > 0]
    if len(pts) < 2:
        return None
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    sxx = sum((x - mx) ** 2 for x, _ in pts)
    if sxx == 0:
        return None
    return sum((x - mx) * (y - my) for x, y in pts) / sxx


def scaling_bench(exponents=PROTH_T3_EXPONENTS, min_bits: int = 64, repeats: int = 3) -> BenchResult:
    """Time one square root modulo each prime ``3 * 2**k + 1`` of at least ``min_bits`` bits."""
    result = BenchResult()
    for k in exponents:
        p = 3 * 2**k + 1
        if p.bit_length() < min_bits or p % 8 != 1:
            continue
        ring = Ring(p)
        beta = next(b for b in range(2, 100) if pow(b, (p - 1) // 2, p) == 1)
        best = math.inf
        for _ in range(repeats):
            start = time.perf_counter()
            sqrt_deterministic(ring, beta)
            best = min(best, time.perf_counter() - start)
        result.points.append((p.bit_length(), best))
    result.slope = _fit_slope(result.points)
    return result
