"""Nested cube-root expressions for roots of unity of prime order q = 2*3**n + 1.

The Galois group of Q(zeta_q) over Q(sqrt(-q)) is cyclic of order 3**n,
generated by ``sigma: zeta -> zeta**s`` with ``s = g**2`` for the smallest
primitive root g. Let ``sigma_m = sigma**(3**m)``. Starting from ``zeta``
(level 0), every element E fixed by ``sigma_m`` splits as

    f = E + sigma_m(E) + sigma_m**2(E)
    g = E + rho*sigma_m(E) + rho**2*sigma_m**2(E)
    h = E + rho**2*sigma_m(E) + rho*sigma_m**2(E)

with ``E = (f + g + h) / 3``. The sum f and the cubes of g and h are fixed by
``sigma_{m+1}``, so they live one level down. Cube roots are ambiguous up to
powers of rho, which is resolved per level with one anchor node A: with
``c = g(A)`` the products ``g(E)*c**2`` and ``h(E)*c`` are also fixed by
``sigma_{m+1}``, and

    g(E) = (g(E)*c**2) * c / c**3,    h(E) = (h(E)*c) * c**2 / c**3.

So one cube root per level determines every other node of that level. After
n levels everything lies in Q(sqrt(-q), sqrt(-3)). Those constants are
computed in floating point and rounded to exact values with denominator 4.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from ..bigring import Ring, inverse_mod
from ..errors import (
    CubeRootsHard,
    NoPrimitiveRoot,
    NotCubicResidue,
    NotTowerPrime,
    PrecondViolated,
    RecognitionFailed,
)
from ..roots import cube_root, fixed_sqrt, is_small_prime
from .qfield import QFElem

__all__ = [
    "Precision",
    "TowerNode",
    "TowerLevel",
    "PairRelation",
    "PeriodTower",
    "SUPPORTED_Q",
    "tower_height",
    "sigma_base",
    "build_tower",
    "recognize",
    "eval_mod_p",
    "eval_mod_p_traced",
    "verify_tower_numeric",
    "tower_document",
    "tower_from_document",
    "tower_to_json",
    "tower_from_json",
]

FORMAT_TAG = "detroot-period-tower/1"
MAX_HEIGHT = 5
SUPPORTED_Q = (7, 19, 163, 487)


@dataclass(frozen=True)
class Precision:
    bits: int = 256
    max_bits: int = 4096

    def __post_init__(self):
        if not 64 <= self.bits <= self.max_bits:
            raise PrecondViolated(f"need 64 <= bits <= max_bits, got {self.bits}, {self.max_bits}")


Ref = int | QFElem


@dataclass(frozen=True)
class TowerNode:
    """One element E of a level, expressed through the next level.

    Each field is an index into the next level's nodes or, on the bottom
    level, an explicit constant. ``cube_args`` holds ``(g(E)**3, h(E)**3)``
    and ``anchor_terms`` holds ``(g(E)*c**2, h(E)*c)`` with ``c`` the cube
    root chosen for the level's anchor.
    """

    sum: Ref
    cube_args: tuple[Ref, Ref]
    anchor_terms: tuple[Ref, Ref]


@dataclass(frozen=True)
class TowerLevel:
    anchor: int
    nodes: tuple[TowerNode, ...]


@dataclass(frozen=True)
class PairRelation:
    """``g(left) * h(right) == product`` for two bottom-level nodes.

    ``right`` is the image of ``left`` under rho -> rho**2, so the product
    lies in Q(sqrt(-q)).
    """

    left: int
    right: int
    product: QFElem


@dataclass(frozen=True)
class PeriodTower:
    q: int
    n: int
    sigma_base: int
    bits: int
    levels: tuple[TowerLevel, ...]
    relations: tuple[PairRelation, ...]

    def constants(self):
        """Every explicit constant, bottom level, in node order."""
        for node in self.levels[-1].nodes:
            yield node.sum
            yield from node.cube_args
            yield from node.anchor_terms


def tower_height(q: int) -> int:
    """n with ``q == 2 * 3**n + 1``, for the supported primes."""
    if not isinstance(q, int) or q < 7 or not is_small_prime(q) or (q - 1) % 2:
        raise NotTowerPrime(f"{q} is not a prime of the form 2*3^n + 1")
    m, n = (q - 1) // 2, 0
    while m % 3 == 0:
        m //= 3
        n += 1
    if m != 1 or n == 0:
        raise NotTowerPrime(f"{q} is not a prime of the form 2*3^n + 1")
    if n > MAX_HEIGHT:
        raise NotTowerPrime(f"q = {q} needs height {n}; supported heights are 1..{MAX_HEIGHT}")
    return n


def _smallest_primitive_root(q: int) -> int:
    # q - 1 = 2 * 3**n
    for g in range(2, q):
        if pow(g, (q - 1) // 2, q) != 1 and pow(g, (q - 1) // 3, q) != 1:
            return g
    raise NotTowerPrime(f"no primitive root mod {q}")


def sigma_base(q: int) -> int:
    return pow(_smallest_primitive_root(q), 2, q)


def recognize(z, q: int, conjugate=None, bits: int | None = None) -> QFElem:
    """Round a complex number to an exact element with denominator 4.

    Without ``conjugate`` the value is matched in Q(sqrt(-q)). With the
    image of the same element under rho -> rho**2, the sum and the
    difference divided by sqrt(-3) are matched in Q(sqrt(-q)), which pins
    all four coefficients. The residual must stay below ``2**(-bits/2)``;
    ``bits`` defaults to the working precision of ``z`` (at least 64).
    """
    ctx = getattr(z, "context", mpmath.mp)
    if bits is None:
        bits = max(ctx.prec, 64)
    z = ctx.mpmathify(z)
    sq = ctx.sqrt(q)
    if conjugate is None:
        raw = (z.real, z.imag / sq, 0, 0)
    else:
        conjugate = ctx.mpmathify(conjugate)
        s = z + conjugate
        d = (z - conjugate) / ctx.mpc(0, ctx.sqrt(3))
        raw = (s.real / 2, s.imag / (2 * sq), d.real / 2, -d.imag / (2 * sq))
    elem = QFElem.from_quarters(q, (int(ctx.nint(4 * c)) for c in raw))

    residual = abs(elem.to_complex(ctx) - z)
    if conjugate is not None:
        residual = max(residual, abs(elem.to_complex(ctx, conjugate=True) - conjugate))
    if residual >= ctx.ldexp(1, -(bits // 2)):
        raise RecognitionFailed(
            f"no element with denominator 4 within 2^-{bits // 2} (residual {ctx.nstr(residual, 5)})",
            residual,
        )
    return elem


@dataclass
class _Run:
    levels: list  # levels[m][i] is the orbit vector of node i
    children: list  # children[m][i] = (f, xg, xh, G, H) indices into levels[m + 1]
    anchors: list
    bottom_gh: list  # (g, h) of each level n-1 node


def _grow(ctx, q: int, n: int, s: int, rho, anchors=None) -> _Run:
    """Split level by level, tracking ``v[j] = sigma**j(E)`` for one period."""
    rho2 = rho * rho
    tiny = ctx.ldexp(1, -(ctx.prec // 4))
    top = [ctx.expjpi(ctx.mpf(2 * pow(s, j, q)) / q) for j in range(3**n)]
    run = _Run([[top]], [], [], [])
    for m in range(n):
        width = 3 ** (n - m - 1)
        splits = []
        for v in run.levels[m]:
            a, b, c = v[:width], v[width : 2 * width], v[2 * width :]
            f = [x + y + z for x, y, z in zip(a, b, c)]
            g = [x + rho * y + rho2 * z for x, y, z in zip(a, b, c)]
            h = [x + rho2 * y + rho * z for x, y, z in zip(a, b, c)]
            splits.append((f, g, h))
        if anchors is None:
            anchor = next(
                (i for i, (_, g, _) in enumerate(splits) if all(abs(x) > tiny for x in g)), None
            )
            if anchor is None:
                raise RecognitionFailed(f"level {m} has no node with a nonzero g part")
        else:
            anchor = anchors[m]
        run.anchors.append(anchor)

        c = splits[anchor][1]
        c2 = [x * x for x in c]
        nxt, kids = [], []
        for i, (f, g, h) in enumerate(splits):
            base = len(nxt)
            nxt += [f, [x**3 for x in g], [x**3 for x in h]]
            if i == anchor:
                big_g = base + 1
            else:
                nxt.append([x * y for x, y in zip(g, c2)])
                big_g = len(nxt) - 1
            nxt.append([x * y for x, y in zip(h, c)])
            kids.append((base, base + 1, base + 2, big_g, len(nxt) - 1))
        run.levels.append(nxt)
        run.children.append(kids)
        if m == n - 1:
            run.bottom_gh = [(g[0], h[0]) for _, g, h in splits]
    return run


def _close(ctx, x, y, tol) -> bool:
    return abs(x - y) <= tol * (1 + abs(x))


def _build(q: int, n: int, s: int, bits: int) -> PeriodTower:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    rho = ctx.mpc(ctx.mpf(-1) / 2, ctx.sqrt(3) / 2)
    run = _grow(ctx, q, n, s, rho)
    conj = _grow(ctx, q, n, s, ctx.conj(rho), anchors=run.anchors)

    leaves = [
        recognize(z[0], q, conjugate=w[0], bits=bits)
        for z, w in zip(run.levels[n], conj.levels[n])
    ]

    levels = []
    for m in range(n):
        resolve = (lambda k: leaves[k]) if m == n - 1 else (lambda k: k)
        nodes = tuple(
            TowerNode(resolve(f), (resolve(xg), resolve(xh)), (resolve(gg), resolve(hh)))
            for f, xg, xh, gg, hh in run.children[m]
        )
        levels.append(TowerLevel(run.anchors[m], nodes))

    # Pair every bottom node with its image under rho -> rho**2.
    tol = ctx.ldexp(1, -(bits // 2))
    bottom, bottom_conj = run.levels[n - 1], conj.levels[n - 1]
    relations = []
    for i, image in enumerate(bottom_conj):
        j = next(
            (
                j
                for j, v in enumerate(bottom)
                if all(_close(ctx, x, y, tol) for x, y in zip(v, image))
            ),
            None,
        )
        if j is None:
            continue
        z = run.bottom_gh[i][0] * run.bottom_gh[j][1]
        w = conj.bottom_gh[i][0] * conj.bottom_gh[j][1]
        product = recognize(z, q, conjugate=w, bits=bits)
        if product.in_quadratic_subfield:
            relations.append(PairRelation(i, j, product))
    return PeriodTower(q, n, s, bits, tuple(levels), tuple(relations))


@lru_cache(maxsize=16)
def build_tower(q: int, prec: Precision | None = None) -> PeriodTower:
    """Build the tower for ``q``, doubling the precision until every constant rounds cleanly."""
    prec = prec or Precision()
    n = tower_height(q)
    s = sigma_base(q)
    bits = prec.bits
    while True:
        try:
            return _build(q, n, s, bits)
        except RecognitionFailed:
            if bits * 2 > prec.max_bits:
                raise
            bits *= 2


def _descend(tower: PeriodTower, arith, accept):
    """Evaluate bottom-up, trying the three cube roots of each level's anchor.

    Choices are scanned in lexicographic order of the rho-exponent vector,
    bottom level first. ``arith`` supplies the field operations; ``accept``
    decides whether a top-level value is the answer.
    """
    n = tower.n
    relations = tower.relations

    def level(m: int, below, choices):
        lvl = tower.levels[m]

        def value(ref):
            return below[ref] if isinstance(ref, int) else arith.const(ref)

        anchor = lvl.nodes[lvl.anchor]
        xa = value(anchor.cube_args[0])
        xa2 = arith.mul(xa, xa)
        for node in lvl.nodes:
            # (g c^2)^3 = g^3 * xa^2 and (h c)^3 = h^3 * xa
            big_g, big_h = (value(r) for r in node.anchor_terms)
            xg, xh = (value(r) for r in node.cube_args)
            if not (
                arith.same(arith.mul(arith.mul(big_g, big_g), big_g), arith.mul(xg, xa2))
                and arith.same(arith.mul(arith.mul(big_h, big_h), big_h), arith.mul(xh, xa))
            ):
                return None
        base = arith.cube_root(xa)
        inv_xa = arith.inv(xa)
        parts = [
            (value(node.sum), value(node.anchor_terms[0]), value(node.anchor_terms[1]))
            for node in lvl.nodes
        ]
        for k in range(3):
            c = arith.mul(base, arith.rho_pow(k))
            cc = arith.mul(c, c)
            gs = [arith.mul(arith.mul(big_g, c), inv_xa) for _, big_g, _ in parts]
            hs = [arith.mul(arith.mul(big_h, cc), inv_xa) for _, _, big_h in parts]
            if m == n - 1 and not all(
                arith.same(arith.mul(gs[r.left], hs[r.right]), arith.const(r.product))
                for r in relations
            ):
                continue
            vals = [arith.third(arith.add(f, arith.add(g, h))) for (f, _, _), g, h in zip(parts, gs, hs)]
            if m == 0:
                if accept(vals[0]):
                    return vals[0], choices + (k,)
                continue
            found = level(m - 1, vals, choices + (k,))
            if found is not None:
                return found
        return None

    return level(n - 1, None, ())


class _ModP:
    def __init__(self, tower: PeriodTower, ring: Ring):
        p = ring.modulus
        self.p = p
        self.ring = ring
        self.su = fixed_sqrt(ring, -tower.q).value
        self.sv = fixed_sqrt(ring, -3).value
        rho = (self.sv - 1) * inverse_mod(2, p) % p
        self.rhos = (1, rho, rho * rho % p)
        self.inv3 = inverse_mod(3, p)
        self._consts = {}

    def const(self, x: QFElem) -> int:
        key = x.coeffs
        if key not in self._consts:
            self._consts[key] = x.mod_p(self.ring, self.su, self.sv)
        return self._consts[key]

    def cube_root(self, x: int) -> int:
        if x == 0:
            raise NoPrimitiveRoot(f"anchor vanishes mod {self.p}")
        try:
            return cube_root(self.ring, x).value
        except NotCubicResidue as exc:
            raise NoPrimitiveRoot(f"anchor is not a cube mod {self.p}") from exc

    def inv(self, x: int) -> int:
        return inverse_mod(x, self.p)

    def rho_pow(self, k: int) -> int:
        return self.rhos[k]

    def mul(self, x, y):
        return x * y % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def third(self, x):
        return x * self.inv3 % self.p

    def same(self, x, y) -> bool:
        return x == y


class _Numeric:
    def __init__(self, ctx, tol):
        self.ctx = ctx
        self.tol = tol
        rho = ctx.mpc(ctx.mpf(-1) / 2, ctx.sqrt(3) / 2)
        self.rhos = (ctx.mpc(1), rho, rho * rho)

    def const(self, x: QFElem):
        return x.to_complex(self.ctx)

    def cube_root(self, x):
        if x == 0:
            raise ZeroDivisionError("anchor vanishes")
        return self.ctx.cbrt(x)

    def inv(self, x):
        return 1 / x

    def rho_pow(self, k):
        return self.rhos[k]

    def mul(self, x, y):
        return x * y

    def add(self, x, y):
        return x + y

    def third(self, x):
        return x / 3

    def same(self, x, y) -> bool:
        return _close(self.ctx, x, y, self.tol)


def eval_mod_p_traced(tower: PeriodTower, ring: Ring):
    """Like :func:`eval_mod_p`, also returning the rho-exponent choice vector."""
    p, q = ring.modulus, tower.q
    if (p - 1) % q:
        raise PrecondViolated(f"{p} is not 1 mod {q}; no q-th roots of unity")
    if p % 4 != 1 or p % 9 not in (4, 7):
        raise CubeRootsHard(f"cube roots mod {p} need p = 1 mod 4 and p = 4, 7 mod 9")
    arith = _ModP(tower, ring)
    found = _descend(tower, arith, lambda z: z != 1 and pow(z, q, p) == 1)
    if found is None:
        raise NoPrimitiveRoot(f"no cube-root choice gives a primitive {q}-th root mod {p}")
    z, choices = found
    return ring(z), choices


def eval_mod_p(tower: PeriodTower, ring: Ring):
    """A primitive q-th root of unity modulo the prime ``ring.modulus``."""
    return eval_mod_p_traced(tower, ring)[0]


def verify_tower_numeric(tower: PeriodTower, prec: Precision | None = None) -> bool:
    """Re-evaluate over the complex numbers and look for a primitive q-th root of unity."""
    bits = (prec or Precision()).bits
    widest = max(abs(c).bit_length() for x in tower.constants() for c in x.quarters())
    ctx = mpmath.MPContext()
    ctx.prec = bits + 4 * widest + 64
    tol = ctx.ldexp(1, -(bits // 2))
    q = tower.q

    def accept(z) -> bool:
        k = int(ctx.nint(ctx.arg(z) * q / (2 * ctx.pi))) % q
        return k != 0 and abs(z - ctx.expjpi(ctx.mpf(2 * k) / q)) < tol

    try:
        return _descend(tower, _Numeric(ctx, tol), accept) is not None
    except (ZeroDivisionError, ValueError):
        return False


def _ref_doc(ref: Ref) -> dict:
    if isinstance(ref, int):
        return {"node": str(ref)}
    return {"quarters": [str(c) for c in ref.quarters()]}


def _ref_load(doc: dict, q: int) -> Ref:
    if "node" in doc:
        return int(doc["node"])
    return QFElem.from_quarters(q, doc["quarters"])


def tower_document(tower: PeriodTower) -> dict:
    """Plain-data form of the tower; every integer is a decimal string."""
    return {
        "format": FORMAT_TAG,
        "q": str(tower.q),
        "n": str(tower.n),
        "sigma_base": str(tower.sigma_base),
        "precision_bits": str(tower.bits),
        "levels": [
            {
                "anchor": str(level.anchor),
                "nodes": [
                    {
                        "sum": _ref_doc(node.sum),
                        "cube_args": [_ref_doc(r) for r in node.cube_args],
                        "anchor_terms": [_ref_doc(r) for r in node.anchor_terms],
                    }
                    for node in level.nodes
                ],
            }
            for level in tower.levels
        ],
        "relations": [
            {
                "left": str(r.left),
                "right": str(r.right),
                "product": [str(c) for c in r.product.quarters()],
            }
            for r in tower.relations
        ],
    }


def tower_from_document(doc: dict) -> PeriodTower:
    if doc.get("format") != FORMAT_TAG:
        raise ValueError(f"unknown tower format {doc.get('format')!r}")
    q = int(doc["q"])
    levels = tuple(
        TowerLevel(
            int(level["anchor"]),
            tuple(
                TowerNode(
                    _ref_load(node["sum"], q),
                    tuple(_ref_load(r, q) for r in node["cube_args"]),
                    tuple(_ref_load(r, q) for r in node["anchor_terms"]),
                )
                for node in level["nodes"]
            ),
        )
        for level in doc["levels"]
    )
    relations = tuple(
        PairRelation(int(r["left"]), int(r["right"]), QFElem.from_quarters(q, r["product"]))
        for r in doc["relations"]
    )
    return PeriodTower(
        q, int(doc["n"]), int(doc["sigma_base"]), int(doc["precision_bits"]), levels, relations
    )


def tower_to_json(tower: PeriodTower) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(tower_document(tower), sort_keys=True, indent=2) + "\n"


def tower_from_json(text: str) -> PeriodTower:
    return tower_from_document(json.loads(text))
