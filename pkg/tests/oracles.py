"""Independent reference computations for the tests.

Nothing here calls into the library's algorithms: square roots and orders
are found by enumeration, and the period constants are computed exactly in
the group ring Z[rho][C_q], with no floating point and no recognition step.
"""

from __future__ import annotations

from fractions import Fraction


def brute_sqrts(beta: int, p: int) -> list[int]:
    return [x for x in range(1, p) if x * x % p == beta % p]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def mult_order(x: int, p: int) -> int:
    k, y = 1, x % p
    while y != 1:
        y = y * x % p
        k += 1
    return k


# Z[rho], rho**2 = -1 - rho, as pairs (a, b) meaning a + b*rho.
def _zr_mul(x, y):
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c - b * d)


class GroupRing:
    """Elements of Z[rho][C_q] modulo the all-ones element.

    ``coeffs[k]`` is the coefficient of zeta**k. Subtracting the constant
    coefficient from every slot gives the canonical representative, which
    uses 1 + zeta + ... + zeta**(q-1) = 0.
    """

    def __init__(self, q: int, coeffs):
        self.q = q
        c0 = coeffs[0]
        self.coeffs = tuple((a - c0[0], b - c0[1]) for a, b in coeffs)

    @classmethod
    def zeta(cls, q: int) -> GroupRing:
        return cls(q, [(1, 0) if k == 1 else (0, 0) for k in range(q)])

    def __add__(self, other):
        return GroupRing(self.q, [(a + c, b + d) for (a, b), (c, d) in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        q = self.q
        out = [(0, 0)] * q
        for i, x in enumerate(self.coeffs):
            if x == (0, 0):
                continue
            for j, y in enumerate(other.coeffs):
                if y == (0, 0):
                    continue
                a, b = _zr_mul(x, y)
                k = (i + j) % q
                out[k] = (out[k][0] + a, out[k][1] + b)
        return GroupRing(q, out)

    def scale(self, z) -> GroupRing:
        return GroupRing(self.q, [_zr_mul(z, c) for c in self.coeffs])

    def act(self, s: int) -> GroupRing:
        """zeta -> zeta**s."""
        out = [(0, 0)] * self.q
        for k, c in enumerate(self.coeffs):
            out[k * s % self.q] = c
        return GroupRing(self.q, out)

    def to_quadratic(self):
        """Coefficients (c0, c1, c2, c3) over 1, sqrt(-q), sqrt(-3), sqrt(3q).

        Valid for elements constant on the squares and on the non-squares,
        which is the subfield Q(sqrt(-q)) extended by rho.
        """
        q = self.q
        squares = {k * k % q for k in range(1, q)}
        a_vals = {self.coeffs[k] for k in squares}
        b_vals = {self.coeffs[k] for k in range(1, q) if k not in squares}
        if len(a_vals) != 1 or len(b_vals) != 1:
            raise ValueError("element is not in the quadratic subfield of Q(zeta)")
        (a0, a1), (b0, b1) = a_vals.pop(), b_vals.pop()
        # A*eta0 + B*eta1 with eta0, eta1 = (-1 +- sqrt(-q))/2, rho = (-1 + sqrt(-3))/2
        return (
            Fraction(-(a0 + b0), 2) + Fraction(a1 + b1, 4),
            Fraction(a0 - b0, 2) - Fraction(a1 - b1, 4),
            Fraction(-(a1 + b1), 4),
            Fraction(-(a1 - b1), 4),
        )


RHO = (0, 1)
RHO2 = (-1, -1)


def split(x: GroupRing, s: int):
    """(f, g, h) for an element fixed by zeta -> zeta**(s**3)."""
    x1, x2 = x.act(s), x.act(s * s)
    f = x + x1 + x2
    g = x + x1.scale(RHO) + x2.scale(RHO2)
    h = x + x1.scale(RHO2) + x2.scale(RHO)
    return f, g, h


def q19_constants() -> dict[str, tuple]:
    """The q = 19 constants as exact coefficient quadruples.

    f0 is the sum part of zeta under sigma**3; f1 and f2 are the cubes of
    its two rho-weighted parts. Each of them splits once more under sigma.
    """
    q, s = 19, 4
    f0, gz, hz = split(GroupRing.zeta(q), pow(s, 3, q))
    f1, f2 = gz * gz * gz, hz * hz * hz
    out = {}
    parts = {}
    for name, fi in (("f0", f0), ("f1", f1), ("f2", f2)):
        y, g, h = split(fi, s)
        parts[name] = (g, h)
        out[f"{name} sum"] = y.to_quadratic()
        out[f"{name} g^3"] = (g * g * g).to_quadratic()
        out[f"{name} h^3"] = (h * h * h).to_quadratic()
    out["g(f1) h(f2)"] = (parts["f1"][0] * parts["f2"][1]).to_quadratic()
    return out


def exact_bottom(q: int, s: int, n: int, anchors) -> list[list[tuple]]:
    """Bottom-level constants of the tower, computed exactly.

    Mirrors the node order of the builder: for each node, the sum, the two
    cubes, then ``g*c**2`` (omitted for the anchor) and ``h*c``.
    Returns per bottom node ``[sum, g^3, h^3, g*c^2, h*c]``.
    """
    level = [GroupRing.zeta(q)]
    for m in range(n):
        step = pow(s, 3 ** (n - m - 1), q)
        splits = [split(x, step) for x in level]
        c = splits[anchors[m]][1]
        c2 = c * c
        nxt, records = [], []
        for i, (f, g, h) in enumerate(splits):
            cube_g = g * g * g
            big_g = cube_g if i == anchors[m] else g * c2
            items = [f, cube_g, h * h * h, big_g, h * c]
            records.append(items)
            nxt += items[:3] + ([] if i == anchors[m] else [items[3]]) + [items[4]]
        level = nxt
    return [[x.to_quadratic() for x in rec] for rec in records]
