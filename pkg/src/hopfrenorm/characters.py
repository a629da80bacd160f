"""Linear maps H -> Q((eps)), the convolution product, characters and
infinitesimal characters, and the convolution exponential and logarithm.

Every map lives on a fixed :class:`~hopfrenorm.hopf.HopfAlgebra` (family and
truncation degree ``N``); combining maps over different truncations raises
``ValueError``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping

from .hopf import (
    UNIT,
    Forest,
    HopfAlgebra,
    HopfElement,
    Tree,
    antipode_forest,
    coproduct,
    forest_key,
    parse_tree,
)
from .series import LaurentSeries

ZERO = LaurentSeries.zero()
ONE = LaurentSeries.one()


class NotConnected(ValueError):
    """A map is not n-connected where the operation requires it."""


class LinMap:
    """A linear map on the truncated basis; missing forests map to exact 0."""

    __slots__ = ("H", "values")

    def __init__(self, H: HopfAlgebra, values: Mapping[Forest, LaurentSeries] | None = None):
        self.H = H
        self.values: dict[Forest, LaurentSeries] = {}
        for f, v in (values or {}).items():
            if f.degree > H.N:
                continue
            if not isinstance(v, LaurentSeries):
                v = LaurentSeries.constant(v)
            if v.is_zero() and v.exact:
                continue
            self.values[f] = v

    def __call__(self, f: Forest) -> LaurentSeries:
        return self.values.get(f, ZERO)

    def evaluate(self, x: HopfElement) -> LaurentSeries:
        out = ZERO
        for f, c in x:
            v = self.values.get(f)
            if v is not None:
                out = out + v.scale(c)
        return out

    def _check(self, other: LinMap) -> None:
        if self.H != other.H:
            raise ValueError(f"mixing truncations: {self.H} vs {other.H}")

    def __add__(self, other: LinMap) -> LinMap:
        self._check(other)
        out = dict(self.values)
        for f, v in other.values.items():
            out[f] = out[f] + v if f in out else v
        return LinMap(self.H, out)

    def __neg__(self) -> LinMap:
        return LinMap(self.H, {f: -v for f, v in self.values.items()})

    def __sub__(self, other: LinMap) -> LinMap:
        return self + (-other)

    def scale(self, c: Fraction | int) -> LinMap:
        return LinMap(self.H, {f: v.scale(c) for f, v in self.values.items()})

    def __mul__(self, other: LinMap) -> LinMap:
        return convolve(self, other)

    def map_values(self, fn: Callable[[LaurentSeries], LaurentSeries]) -> LinMap:
        return LinMap(self.H, {f: fn(v) for f, v in self.values.items()})

    def first_mismatch(self, other: LinMap) -> Forest | None:
        """First basis forest (in basis order) where the two maps differ."""
        self._check(other)
        for f in self.H.forests():
            if not self(f).equals(other(f)):
                return f
        return None

    def equals(self, other: LinMap) -> bool:
        return self.first_mismatch(other) is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.H == other.H and self.equals(other)

    __hash__ = None  # type: ignore[assignment]

    def support(self) -> list[Forest]:
        return sorted(self.values, key=forest_key)

    def __repr__(self) -> str:
        body = ", ".join(f"{f.code()}: {self.values[f]}" for f in self.support())
        return f"{type(self).__name__}({body})"


class Character(LinMap):
    """A unital multiplicative map, fixed by its values on trees."""

    __slots__ = ()

    @classmethod
    def from_tree_values(cls, H: HopfAlgebra, tree_values: Mapping[Tree, LaurentSeries]) -> Character:
        tv = {}
        for t, v in tree_values.items():
            if not isinstance(v, LaurentSeries):
                v = LaurentSeries.constant(v)
            if t.degree <= H.N:
                tv[t] = v
        values = {UNIT: ONE}
        for f in H.forests():
            if not f:
                continue
            val = ONE
            for t in f:
                val = val * tv.get(t, ZERO)
            values[f] = val
        return cls(H, values)

    @classmethod
    def from_linmap(cls, f: LinMap) -> Character:
        """Re-derive a character from the tree values of ``f``."""
        return cls.from_tree_values(f.H, tree_values(f))


class InfChar(LinMap):
    """A map vanishing on the unit and on every product of two or more trees."""

    __slots__ = ()

    @classmethod
    def from_tree_values(cls, H: HopfAlgebra, tree_values: Mapping[Tree, LaurentSeries]) -> InfChar:
        return cls(H, {Forest((t,)): v for t, v in tree_values.items()})

    @classmethod
    def from_linmap(cls, f: LinMap, check: bool = True) -> InfChar:
        if check and not is_inf_char(f):
            raise ValueError("map is not an infinitesimal character")
        return cls(f.H, f.values)


def tree_values(f: LinMap) -> dict[Tree, LaurentSeries]:
    return {t: f(Forest((t,))) for t in f.H.trees()}


def unit_map(H: HopfAlgebra) -> Character:
    """The convolution unit e (counit followed by the unit of the series ring)."""
    return Character(H, {UNIT: ONE})


def zero_map(H: HopfAlgebra) -> LinMap:
    return LinMap(H)


def convolve(f: LinMap, g: LinMap) -> LinMap:
    """(f * g)(x) = sum f(x') g(x'') over the coproduct of x."""
    f._check(g)
    fv, gv = f.values, g.values
    out = {}
    for x in f.H.forests():
        acc = None
        for left, right, m in coproduct(x):
            a = fv.get(left)
            if a is None:
                continue
            b = gv.get(right)
            if b is None:
                continue
            term = a * b
            if m != 1:
                term = term.scale(m)
            acc = term if acc is None else acc + term
        if acc is not None:
            out[x] = acc
    if isinstance(f, Character) and isinstance(g, Character):
        return Character(f.H, out)
    return LinMap(f.H, out)


def conv_power(f: LinMap, k: int) -> LinMap:
    out: LinMap = unit_map(f.H)
    for _ in range(k):
        out = convolve(out, f)
    return out


def conv_inverse(phi: LinMap) -> LinMap:
    """Convolution inverse of a character, ``phi o S``."""
    H = phi.H
    if isinstance(phi, Character):
        return Character.from_tree_values(
            H, {t: phi.evaluate(antipode_forest(Forest((t,)))) for t in H.trees()})
    return LinMap(H, {f: phi.evaluate(antipode_forest(f)) for f in H.forests()})


def _min_degree(f: LinMap) -> int | None:
    degs = [x.degree for x, v in f.values.items() if not v.is_zero() or not v.exact]
    return min(degs) if degs else None


def conv_exp(rho: LinMap) -> LinMap:
    """sum_k rho^{*k}/k!, finite because rho vanishes in degree 0."""
    if not rho(UNIT).is_zero():
        raise ValueError("exp needs a map vanishing on the unit")
    H = rho.H
    out: LinMap = unit_map(H)
    power: LinMap = unit_map(H)
    lowest = _min_degree(rho) or H.N + 1
    for k in range(1, H.N // lowest + 1):
        power = convolve(power, rho)
        out = out + power.scale(Fraction(1, factorial(k)))
    if isinstance(rho, InfChar):
        return Character(H, out.values)
    return out


def conv_log(phi: LinMap) -> LinMap:
    """sum_k (-1)^{k-1}/k (phi - e)^{*k} for phi equal to 1 on the unit."""
    H = phi.H
    if not phi(UNIT).equals(ONE):
        raise ValueError("log needs a map with value 1 on the unit")
    rho = phi - unit_map(H)
    out: LinMap = zero_map(H)
    power: LinMap = unit_map(H)
    lowest = _min_degree(rho) or H.N + 1
    for k in range(1, H.N // lowest + 1):
        power = convolve(power, rho)
        out = out + power.scale(Fraction((-1) ** (k - 1), k))
    return out


def graded_component(f: LinMap, n: int) -> LinMap:
    """Equal to f on degree-n forests and 0 elsewhere."""
    if n == 0 and isinstance(f, Character):
        return unit_map(f.H)
    cls = InfChar if isinstance(f, InfChar) else LinMap
    return cls(f.H, {x: v for x, v in f.values.items() if x.degree == n})


def degree_range(f: LinMap, lo: int, hi: int) -> LinMap:
    """Sum of the graded components of degrees lo..hi inclusive."""
    return LinMap(f.H, {x: v for x, v in f.values.items() if lo <= x.degree <= hi})


def is_n_connected(f: LinMap, n: int, mode: str = "group") -> bool:
    """Group flavour: f - e vanishes in degrees 1..n-1 and f(1) = 1.
    Lie flavour: f vanishes in degrees 0..n-1."""
    if mode == "group":
        if not f(UNIT).equals(ONE):
            return False
        lo = 1
    elif mode == "lie":
        lo = 0
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for d in range(lo, min(n, f.H.N + 1)):
        if d == 0 and mode == "group":
            continue
        for x in f.H.basis(d):
            if not f(x).equals(ZERO):
                return False
    return True


def is_character(f: LinMap) -> bool:
    if not f(UNIT).equals(ONE):
        return False
    for x in f.H.forests():
        if len(x) < 2:
            continue
        prod = ONE
        for t in x:
            prod = prod * f(Forest((t,)))
        if not f(x).equals(prod):
            return False
    return True


def is_inf_char(f: LinMap) -> bool:
    if not f(UNIT).equals(ZERO):
        return False
    return all(f(x).equals(ZERO) for x in f.H.forests() if len(x) >= 2)


def precompose(f: LinMap, endo: Callable[[Forest], HopfElement]) -> LinMap:
    """The map x -> f(endo(x))."""
    return LinMap(f.H, {x: f.evaluate(endo(x)) for x in f.H.forests()})


# -- JSON -----------------------------------------------------------------

def character_to_json(f: LinMap) -> dict:
    return {
        "hopf": f.H.family,
        "truncation": f.H.N,
        "values": {t.code(): f(Forest((t,))).to_json() for t in f.H.trees()},
    }


def character_from_json(obj: Mapping | str, N: int | None = None) -> Character:
    """Parse the character schema; values may only be given on trees."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        family = obj["hopf"]
        truncation = int(obj["truncation"]) if N is None else N
        raw = obj["values"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed character: {exc}") from exc
    H = HopfAlgebra(family, truncation)
    tv = {}
    for code, series in raw.items():
        t = parse_tree(code)
        if not H.contains_tree(t):
            if t.degree > H.N:
                continue
            raise ValueError(f"tree {code} is not in the {family} family")
        tv[t] = LaurentSeries.from_json(series)
    return Character.from_tree_values(H, tv)
