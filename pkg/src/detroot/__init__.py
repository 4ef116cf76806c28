"""Deterministic square roots, roots of unity and Proth primality proofs in prime fields."""

from .bigring import Elem, Ring, euler_is_square, make_ring, modinv, modpow
from .errors import DetrootError
from .galpha import INFINITY, GElem, GroupCtx, RootFound, gpow, lift, psi, psi_inv, star
from .periods import PeriodTower, QFElem, build_tower, eval_mod_p, verify_tower_numeric
from .proth import Composite, Prime, ProthCase, ProthCertificate, parse_proth, prove, verify_certificate
from .roots import ZetaSpec, cube_root, find_zeta4, find_zeta_r, fixed_sqrt
from .sqrt_engine import (
    CaseTag,
    Factorization,
    SqrtConfig,
    SqrtResult,
    SqrtTrace,
    classify_case,
    factor_qminus1,
    sqrt_deterministic,
    sqrt_easy,
    sqrt_mod,
)

__version__ = "0.1.0"

__all__ = [
    "Ring",
    "Elem",
    "make_ring",
    "modpow",
    "modinv",
    "euler_is_square",
    "DetrootError",
    "GroupCtx",
    "GElem",
    "INFINITY",
    "RootFound",
    "lift",
    "star",
    "gpow",
    "psi",
    "psi_inv",
    "ZetaSpec",
    "find_zeta_r",
    "find_zeta4",
    "cube_root",
    "fixed_sqrt",
    "Factorization",
    "CaseTag",
    "SqrtConfig",
    "SqrtTrace",
    "SqrtResult",
    "factor_qminus1",
    "classify_case",
    "sqrt_easy",
    "sqrt_deterministic",
    "sqrt_mod",
    "ProthCase",
    "ProthCertificate",
    "Prime",
    "Composite",
    "parse_proth",
    "prove",
    "verify_certificate",
    "QFElem",
    "PeriodTower",
    "build_tower",
    "eval_mod_p",
    "verify_tower_numeric",
]
