"""Roots of unity of prime order 2*3**n + 1 as nested cube roots."""

from .qfield import QFElem
from .tower import (
    SUPPORTED_Q,
    PairRelation,
    PeriodTower,
    Precision,
    TowerLevel,
    TowerNode,
    build_tower,
    eval_mod_p,
    eval_mod_p_traced,
    recognize,
    sigma_base,
    tower_document,
    tower_from_document,
    tower_from_json,
    tower_height,
    tower_to_json,
    verify_tower_numeric,
)

__all__ = [
    "QFElem",
    "Precision",
    "PeriodTower",
    "TowerLevel",
    "TowerNode",
    "PairRelation",
    "SUPPORTED_Q",
    "build_tower",
    "eval_mod_p",
    "eval_mod_p_traced",
    "recognize",
    "sigma_base",
    "tower_height",
    "tower_document",
    "tower_from_document",
    "tower_to_json",
    "tower_from_json",
    "verify_tower_numeric",
]
