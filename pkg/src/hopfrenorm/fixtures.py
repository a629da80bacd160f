"""Toy Feynman rules used as reproducible test characters."""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

from .characters import Character
from .hopf import LADDERS, ROOTED_TREES, HopfAlgebra, is_ladder
from .series import LaurentSeries


def ladder_exponential(N: int, family: str = LADDERS) -> Character:
    """phi(l_n) = 1/(n! eps^n): the exponential of a degree-one polar map."""
    H = HopfAlgebra(family, N)
    values = {}
    for t in H.trees():
        if is_ladder(t):
            n = t.degree
            values[t] = LaurentSeries.monomial(-n, Fraction(1, factorial(n)))
    return Character.from_tree_values(H, values)


def ladder_poles(N: int, family: str = LADDERS) -> Character:
    """phi(l_n) = eps^{-n}."""
    H = HopfAlgebra(family, N)
    values = {t: LaurentSeries.monomial(-t.degree) for t in H.trees() if is_ladder(t)}
    return Character.from_tree_values(H, values)


def holomorphic(N: int, family: str = ROOTED_TREES, seed: int = 0) -> Character:
    """A character with values in Q[[eps]] (nothing to renormalize)."""
    rng = random.Random(seed)
    H = HopfAlgebra(family, N)
    values = {}
    for t in H.trees():
        values[t] = LaurentSeries({k: Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                                   for k in range(0, N + 1)}, cap=N + 1)
    return Character.from_tree_values(H, values)


def random_polar(N: int, seed: int, family: str = ROOTED_TREES, height: int = 3) -> Character:
    """Seeded random character: a tree of degree d gets poles up to eps^{-d}
    and coefficients known up to eps^N."""
    rng = random.Random(seed)
    H = HopfAlgebra(family, N)
    values = {}
    for t in H.trees():
        d = t.degree
        coeffs = {}
        for k in range(-d, N + 1):
            num = rng.randint(-height, height)
            if num:
                coeffs[k] = Fraction(num, rng.randint(1, height))
        coeffs.setdefault(-d, Fraction(1))
        values[t] = LaurentSeries(coeffs, cap=N + 1)
    return Character.from_tree_values(H, values)
