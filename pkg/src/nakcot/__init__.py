"""Cotorsion pairs, co-heart towers and support tau-tilting on linear Nakayama algebras."""

from .core.algebra import Interval, Module, NakayamaAlgebra, list_indecomposables, parse_interval
from .core.category import modcat
from .core.labels import load_label_dictionary
from .cotorsion import (
    CotorsionPair,
    HypothesisRejected,
    InvariantError,
    check_cotorsion_pair,
    enumerate_cotorsion_pairs,
    hereditary_check,
    verify_main1,
    verify_main5,
    w_tower,
)
from .subcat.base import Subcat, left_perp, right_perp
from .tautilt import verify_main2

__version__ = "0.1.0"

__all__ = [
    "CotorsionPair",
    "HypothesisRejected",
    "Interval",
    "InvariantError",
    "Module",
    "NakayamaAlgebra",
    "Subcat",
    "check_cotorsion_pair",
    "enumerate_cotorsion_pairs",
    "hereditary_check",
    "left_perp",
    "list_indecomposables",
    "load_label_dictionary",
    "modcat",
    "parse_interval",
    "right_perp",
    "verify_main1",
    "verify_main2",
    "verify_main5",
    "w_tower",
]
