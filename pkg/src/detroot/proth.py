"""Deterministic primality proofs for Proth numbers ``N = 2**e * t + 1``, ``2**e > t``.

The prover runs the square-root machinery over Z/N as though N were prime:
it builds ``sqrt(-1)`` by bounded search and then takes square roots
repeatedly to reach ``(-1)**(1/2**(e-1))``. For prime N every step
succeeds. For composite N some step has to fail (a non-invertible
denominator, an impossible Euler residue, an exhausted search), and that
failure is the verdict. A finished chain is checked against Proth's theorem
directly, so a ``Prime`` verdict never relies on the chain alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigring import Ring
from .errors import CompositeSignal, NonInvertible, NotASquare, NotProthForm
from .roots import ZetaSpec, search_zeta
from .sqrt_engine import SqrtConfig, sqrt_deterministic

__all__ = [
    "ProthCase",
    "ProthCertificate",
    "Prime",
    "Composite",
    "parse_proth",
    "prove",
    "verify_certificate",
]


@dataclass(frozen=True)
class ProthCase:
    N: int
    e: int
    t: int


@dataclass(frozen=True)
class ProthCertificate:
    """Witness ``a`` with ``a**((N-1)/2) == -1 (mod N)``."""

    N: int
    witness: int


@dataclass(frozen=True)
class Prime:
    certificate: ProthCertificate
    # chain[i] is a (2**(i+1))-th root of -1; the last entry is always a witness
    chain: tuple[int, ...]

    @property
    def N(self) -> int:
        return self.certificate.N


@dataclass(frozen=True)
class Composite:
    N: int
    step: str
    reason: str
    factor: int | None = None


def parse_proth(N: int) -> ProthCase:
    if N <= 3 or N % 2 == 0:
        raise NotProthForm(f"{N} is not an odd integer above 3")
    rest = N - 1
    e = (rest & -rest).bit_length() - 1
    t = rest >> e
    if 2**e <= t:
        raise NotProthForm(f"{N} - 1 = 2^{e} * {t} with 2^{e} <= {t}")
    return ProthCase(N, e, t)


def verify_certificate(cert: ProthCertificate) -> bool:
    """Proth's theorem: a True answer proves ``cert.N`` prime."""
    N = cert.N
    parse_proth(N)
    return pow(cert.witness, (N - 1) // 2, N) == N - 1


# Step I of the square-root algorithm scans at most 2t - 1 candidates and in
# practice stops at the first; a ceiling would turn large t into false verdicts.
_PROVER_CONFIG = SqrtConfig(t_ceiling=None)


def prove(N: int, config: SqrtConfig | None = None) -> Prime | Composite:
    case = parse_proth(N)
    config = config or _PROVER_CONFIG
    ring = Ring(N)
    chain: list[int] = []
    step = "zeta4"
    try:
        found = search_zeta(ring, ZetaSpec(4, case.e, case.t))
        a = found.zeta.value
        if a * a % N != N - 1:
            return Composite(N, step, f"{a}^2 != -1 mod {N}")
        chain.append(a)
        for k in range(2, case.e):
            step = f"sqrt-{k}"
            root = sqrt_deterministic(ring, a, config).roots[0].value
            if root * root % N != a:
                return Composite(N, step, f"{root}^2 != {a} mod {N}")
            a = root
            chain.append(a)
    except NonInvertible as exc:
        factor = exc.witness if 1 < exc.witness < N else None
        return Composite(N, step, str(exc), factor)
    except (CompositeSignal, NotASquare) as exc:
        return Composite(N, step, f"{type(exc).__name__}: {exc}")

    if not verify_certificate(ProthCertificate(N, a)):
        return Composite(N, "proth-check", f"{a}^((N-1)/2) != -1 mod {N}")
    # The search candidate is often a witness too, and a smaller one.
    small = ProthCertificate(N, found.g)
    cert = small if verify_certificate(small) else ProthCertificate(N, a)
    return Prime(cert, tuple(chain))
