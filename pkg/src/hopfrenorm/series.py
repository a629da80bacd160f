"""Truncated Laurent series in eps over the rationals.

A :class:`LaurentSeries` stores the coefficients it knows exactly together
with a truncation order ``cap``: every coefficient of ``eps**k`` with
``k < cap`` is exact, nothing is claimed above.  ``cap is None`` marks an
exact (finitely supported) series.  Arithmetic propagates caps
pessimistically, so a reported coefficient is never wrong.

The minimal-subtraction splitting is ``r_minus`` (strict polar part) and
``r_plus = 1 - r_minus``.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from fractions import Fraction
from typing import Iterator, Mapping

Rational = Fraction

DEFAULT_POLE_BOUND = 64

_pole_bound: contextvars.ContextVar[int] = contextvars.ContextVar(
    "pole_bound", default=DEFAULT_POLE_BOUND
)


class FloorExceeded(ArithmeticError):
    """A product produced a pole deeper than the configured bound."""


class TruncationError(ArithmeticError):
    """An operation needs coefficients that the truncation does not provide."""


def pole_bound() -> int:
    return _pole_bound.get()


@contextlib.contextmanager
def pole_bound_scope(bound: int) -> Iterator[int]:
    """Temporarily set the global pole bound (maximal admissible pole order)."""
    token = _pole_bound.set(int(bound))
    try:
        yield bound
    finally:
        _pole_bound.reset(token)


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    text = text.strip()
    if "/" in text:
        p, q = text.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _min_cap(*caps: float) -> int | None:
    m = min(caps)
    return None if m == math.inf else int(m)


def _inf(cap: int | None) -> float:
    return math.inf if cap is None else cap


class LaurentSeries:
    """Element of Q((eps)) known modulo ``eps**cap``.

    Coefficients are stored densely from the lowest nonzero exponent.
    ``floor`` is a lower bound on the support kept for bookkeeping and
    serialization; it never exceeds the lowest nonzero exponent.
    """

    __slots__ = ("_lo", "_data", "floor", "cap", "_hash")

    def __init__(
        self,
        coeffs: Mapping[int, Fraction | int | str] | None = None,
        cap: int | None = None,
        floor: int | None = None,
    ):
        items = {}
        for k, v in (coeffs or {}).items():
            k = int(k)
            v = parse_rational(v)
            if v and (cap is None or k < cap):
                items[k] = v
        if items:
            lo, hi = min(items), max(items)
            data = tuple(items.get(k, Fraction(0)) for k in range(lo, hi + 1))
        else:
            lo, data = 0, ()
        self._set(lo, data, cap, floor)

    def _set(self, lo, data, cap, floor):
        self._lo = lo
        self._data = data
        self.cap = cap
        lowest = lo if data else 0
        if floor is None:
            floor = min(0, lowest)
        floor = min(floor, lowest)
        if cap is not None:
            floor = min(floor, cap)
        self.floor = floor
        self._hash = None

    @classmethod
    def _raw(cls, lo: int, data: list | tuple, cap: int | None, floor: int | None = None):
        # trims zero ends and coefficients at or above the cap
        if cap is not None:
            data = data[: max(0, cap - lo)]
        i, j = 0, len(data)
        while i < j and not data[i]:
            i += 1
        while j > i and not data[j - 1]:
            j -= 1
        obj = cls.__new__(cls)
        obj._set(lo + i if i < j else 0, tuple(data[i:j]), cap, floor)
        return obj

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, cap: int | None = None) -> LaurentSeries:
        return cls._raw(0, (), cap)

    @classmethod
    def one(cls, cap: int | None = None) -> LaurentSeries:
        return cls._raw(0, (Fraction(1),), cap)

    @classmethod
    def monomial(cls, k: int, c: Fraction | int = 1, cap: int | None = None) -> LaurentSeries:
        return cls._raw(k, (Fraction(c),), cap)

    @classmethod
    def constant(cls, c: Fraction | int, cap: int | None = None) -> LaurentSeries:
        return cls._raw(0, (Fraction(c),), cap)

    # -- inspection ----------------------------------------------------

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {self._lo + i: c for i, c in enumerate(self._data) if c}

    @property
    def exact(self) -> bool:
        return self.cap is None

    def order(self) -> float:
        """Lowest exponent that may carry a nonzero coefficient."""
        if self._data:
            return self._lo
        return _inf(self.cap)

    def pole_order(self) -> int:
        return max(0, -self._lo) if self._data else 0

    def __getitem__(self, k: int) -> Fraction:
        if self.cap is not None and k >= self.cap:
            raise TruncationError(f"coefficient of eps^{k} beyond cap {self.cap}")
        i = k - self._lo
        if 0 <= i < len(self._data):
            return self._data[i]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._data

    def __bool__(self) -> bool:
        return bool(self._data)

    def is_polar(self) -> bool:
        """True when all known coefficients sit at negative exponents."""
        return not self._data or self._lo + len(self._data) - 1 < 0

    def is_holomorphic(self) -> bool:
        return not self._data or self._lo >= 0

    # -- arithmetic ----------------------------------------------------

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries._raw(self._lo, tuple(-c for c in self._data), self.cap, self.floor)

    def __add__(self, other: LaurentSeries | int | Fraction) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        cap = _min_cap(_inf(self.cap), _inf(other.cap))
        floor = min(self.floor, other.floor)
        if not other._data:
            return LaurentSeries._raw(self._lo, self._data, cap, floor)
        if not self._data:
            return LaurentSeries._raw(other._lo, other._data, cap, floor)
        lo = min(self._lo, other._lo)
        hi = max(self._lo + len(self._data), other._lo + len(other._data))
        out = [Fraction(0)] * (hi - lo)
        for i, c in enumerate(self._data, self._lo - lo):
            out[i] = c
        for i, c in enumerate(other._data, other._lo - lo):
            out[i] += c
        return LaurentSeries._raw(lo, out, cap, floor)

    __radd__ = __add__

    def __sub__(self, other: LaurentSeries | int | Fraction) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Fraction | int) -> LaurentSeries:
        c = Fraction(c)
        if not c:
            return LaurentSeries._raw(0, (), self.cap, self.floor)
        return LaurentSeries._raw(self._lo, tuple(c * x for x in self._data), self.cap, self.floor)

    def __mul__(self, other: LaurentSeries | int | Fraction) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        cap = _min_cap(
            _inf(self.cap) + other.order(), _inf(other.cap) + self.order()
        )
        floor = self.floor + other.floor
        a, b = self._data, other._data
        if not a or not b:
            return LaurentSeries._raw(0, (), cap, max(floor, -pole_bound()))
        lo = self._lo + other._lo
        n = len(a) + len(b) - 1
        if cap is not None:
            n = min(n, cap - lo)
        if n <= 0:
            return LaurentSeries._raw(0, (), cap, max(floor, -pole_bound()))
        out = [0] * n
        lb = len(b)
        for i, x in enumerate(a):
            if not x:
                continue
            for j in range(min(lb, n - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
        res = LaurentSeries._raw(lo, [Fraction(v) for v in out], cap, None)
        if res._data and res._lo < -pole_bound():
            raise FloorExceeded(
                f"pole of order {-res._lo} exceeds bound {pole_bound()}"
            )
        res.floor = min(max(floor, -pole_bound()), res._lo if res._data else 0)
        return res

    __rmul__ = __mul__

    def with_cap(self, cap: int | None) -> LaurentSeries:
        """Forget precision beyond ``cap`` (never gains precision)."""
        new = _min_cap(_inf(self.cap), _inf(cap))
        return LaurentSeries._raw(self._lo, self._data, new, self.floor)

    # -- comparison ----------------------------------------------------

    def window(self) -> tuple[int, float]:
        return self.floor, _inf(self.cap)

    def equals(self, other: LaurentSeries) -> bool:
        """Exact comparison on the common validity window.

        Raises ``TruncationError`` when the two windows do not overlap.
        """
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        cap = min(_inf(self.cap), _inf(other.cap))
        if cap < max(self.floor, other.floor):
            raise TruncationError("series windows are disjoint")
        a, b = self.coeffs, other.coeffs
        for k in a.keys() | b.keys():
            if k < cap and a.get(k, 0) != b.get(k, 0):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.constant(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        # equality is window-based, so only the polar part is hashed
        if self._hash is None:
            self._hash = hash(tuple(sorted((k, v) for k, v in self.coeffs.items() if k < 0)))
        return self._hash

    # -- rendering -----------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"

    def __str__(self) -> str:
        terms = []
        for k, c in sorted(self.coeffs.items()):
            coef = format_rational(c)
            if k == 0:
                terms.append(coef)
            else:
                mon = "eps" if k == 1 else f"eps^{k}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append(f"{coef}*{mon}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        if self.cap is not None:
            body += f" + O(eps^{self.cap})"
        return body

    def to_json(self) -> dict:
        return {
            "floor": self.floor,
            "cap": self.cap,
            "coeffs": {str(k): format_rational(c) for k, c in sorted(self.coeffs.items())},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> LaurentSeries:
        if not isinstance(obj, Mapping) or "coeffs" not in obj:
            raise ValueError(f"not a series object: {obj!r}")
        cap = obj.get("cap")
        floor = obj.get("floor")
        coeffs = {int(k): parse_rational(v) for k, v in obj["coeffs"].items()}
        if floor is not None and any(c and k < floor for k, c in coeffs.items()):
            raise ValueError("coefficient below declared floor")
        return cls(coeffs, cap=None if cap is None else int(cap), floor=floor)


def eps(k: int = 1) -> LaurentSeries:
    """The exact monomial ``eps**k``."""
    return LaurentSeries.monomial(k)


def ls_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def ls_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def r_minus(a: LaurentSeries) -> LaurentSeries:
    """Strict polar part; the result is exact."""
    if a.cap is not None and a.cap < 0:
        raise TruncationError(f"polar part not known: cap {a.cap} < 0")
    return LaurentSeries._raw(a._lo, a._data[: max(0, -a._lo)], None, a.floor)


def r_plus(a: LaurentSeries) -> LaurentSeries:
    """``a - r_minus(a)``: the part in Q[[eps]]."""
    if not a._data or a._lo >= 0:
        return LaurentSeries._raw(a._lo, a._data, a.cap, 0)
    start = -a._lo
    return LaurentSeries._raw(0, a._data[start:], a.cap, 0)


def rb_check(x: LaurentSeries, y: LaurentSeries) -> bool:
    """Weight-one Rota-Baxter identity for ``r_minus`` at ``(x, y)``."""
    lhs = r_minus(x) * r_minus(y)
    rhs = r_minus(x * r_minus(y)) + r_minus(r_minus(x) * y) - r_minus(x * y)
    return lhs == rhs
