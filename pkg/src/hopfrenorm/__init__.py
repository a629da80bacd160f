"""Exact Birkhoff decomposition of characters on the rooted-tree Hopf algebra,
with the descent-algebra (Zassenhaus and Dynkin) side of the story."""

from .characters import (
    Character,
    InfChar,
    LinMap,
    NotConnected,
    character_from_json,
    character_to_json,
    conv_exp,
    conv_inverse,
    conv_log,
    convolve,
    is_character,
    is_inf_char,
    is_n_connected,
    unit_map,
)
from .descent import B, DegreeTooLarge, DescentElement, alpha_H, dynkin, internal_product, zassenhaus
from .hopf import LADDERS, ROOTED_TREES, Forest, HopfAlgebra, Tree, ladder, parse_forest, parse_tree
from .renorm import (
    BirkhoffPair,
    ExpFactorization,
    assemble,
    beta,
    bogoliubov_decompose,
    exp_factorize,
    verify_theorem,
    zassenhaus_counterterm,
)
from .series import FloorExceeded, LaurentSeries, TruncationError, eps, r_minus, r_plus

__version__ = "0.1.0"

__all__ = [
    "B", "BirkhoffPair", "Character", "DegreeTooLarge", "DescentElement", "ExpFactorization",
    "FloorExceeded", "Forest", "HopfAlgebra", "InfChar", "LADDERS", "LaurentSeries", "LinMap",
    "NotConnected", "ROOTED_TREES", "Tree", "TruncationError", "alpha_H", "assemble", "beta",
    "bogoliubov_decompose", "character_from_json", "character_to_json", "conv_exp",
    "conv_inverse", "conv_log", "convolve", "dynkin", "eps", "exp_factorize", "internal_product",
    "is_character", "is_inf_char", "is_n_connected", "ladder", "parse_forest", "parse_tree",
    "r_minus", "r_plus", "unit_map", "verify_theorem", "zassenhaus", "zassenhaus_counterterm",
]
