"""Solomon's descent algebra in the composition basis.

``B(c1, ..., ck)`` denotes the convolution product ``p_c1 * ... * p_ck`` of
graded projections of the shuffle Hopf algebra T*(X).  Convolution is
concatenation of compositions.  In degree n the element ``B_C`` is realized
in Q[S_n] as the sum of the permutations whose descent set is contained in
the partial sums of C; there the composition (internal) product of
endomorphisms is the group-algebra product.

Permutations are one-line tuples on ``1..n``.  ``sigma`` acts on T*(X) by
``y1...yn -> y_{sigma^-1(1)} ... y_{sigma^-1(n)}``; the transposed action on
T(X), used for Lie-theoretic checks, is ``y1...yn -> y_{sigma(1)} ... y_{sigma(n)}``.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping, Sequence

from .hopf import Forest, HopfAlgebra, HopfElement, coproduct

Composition = tuple[int, ...]
Permutation = tuple[int, ...]
Word = tuple
TensorElement = dict  # Word -> Fraction

PERMUTATION_CAP = 8
WEIGHT_CAP = 8


class DegreeTooLarge(ValueError):
    """Requested degree is beyond the configured cap."""


class NotHomogeneous(ValueError):
    """Operation needs a homogeneous element."""


def max_degree(default: int) -> int:
    override = os.environ.get("RENORM_MAX_DEGREE")
    return int(override) if override else default


def _check_cap(n: int, cap: int = PERMUTATION_CAP) -> None:
    cap = max_degree(cap)
    if n > cap:
        raise DegreeTooLarge(f"degree {n} exceeds cap {cap}")


def comp_key(c: Composition) -> tuple:
    """Graded order; coarser compositions first, then lexicographic."""
    return (sum(c), len(c), c)


@lru_cache(maxsize=None)
def compositions(n: int) -> tuple[Composition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append((first,) + rest)
    return tuple(sorted(out, key=comp_key))


def descent_mask(c: Composition) -> int:
    """Partial-sum set of c (excluding the total) as a bitmask; bit i-1 <-> i."""
    mask, s = 0, 0
    for part in c[:-1]:
        s += part
        mask |= 1 << (s - 1)
    return mask


def composition_of_mask(mask: int, n: int) -> Composition:
    cuts = [i for i in range(1, n) if mask >> (i - 1) & 1]
    bounds = [0] + cuts + [n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def refines(fine: Composition, coarse: Composition) -> bool:
    return sum(fine) == sum(coarse) and descent_mask(coarse) & ~descent_mask(fine) == 0


def format_composition(c: Composition) -> str:
    return ",".join(map(str, c))


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class DescentElement:
    """Rational combination of compositions; the empty composition is the unit."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Composition, Fraction | int] | None = None):
        self.terms: dict[Composition, Fraction] = {
            tuple(c): Fraction(v) for c, v in (terms or {}).items() if v
        }

    @classmethod
    def unit(cls) -> DescentElement:
        return cls({(): 1})

    @classmethod
    def zero(cls) -> DescentElement:
        return cls()

    def __getitem__(self, c: Composition) -> Fraction:
        return self.terms.get(tuple(c), Fraction(0))

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: comp_key(kv[0])))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: DescentElement) -> DescentElement:
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, 0) + v
        return DescentElement(out)

    def __neg__(self) -> DescentElement:
        return DescentElement({c: -v for c, v in self.terms.items()})

    def __sub__(self, other: DescentElement) -> DescentElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DescentElement):
            return d_convolve(self, other)
        return DescentElement({c: v * other for c, v in self.terms.items()})

    def __rmul__(self, other):
        return DescentElement({c: other * v for c, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DescentElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def weights(self) -> set[int]:
        return {sum(c) for c in self.terms}

    def weight(self) -> int:
        """The weight of a homogeneous element."""
        ws = self.weights()
        if len(ws) > 1:
            raise NotHomogeneous(f"element has weights {sorted(ws)}")
        return ws.pop() if ws else 0

    def component(self, n: int) -> DescentElement:
        return DescentElement({c: v for c, v in self.terms.items() if sum(c) == n})

    def between(self, lo: int, hi: int) -> DescentElement:
        return DescentElement({c: v for c, v in self.terms.items() if lo <= sum(c) <= hi})

    def truncate(self, N: int) -> DescentElement:
        return self.between(0, N)

    def __repr__(self) -> str:
        return f"DescentElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, v in self:
            body = f"{_fmt(abs(v))}·({format_composition(c)})"
            if not parts:
                parts.append(body if v > 0 else "−" + body)
            else:
                parts.append(("+ " if v > 0 else "− ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        n = self.weight()
        return {
            "degree": n,
            "basis": "composition",
            "element": {format_composition(c): _fmt(v) for c, v in self},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> DescentElement:
        terms = {}
        for key, val in obj["element"].items():
            comp = tuple(int(p) for p in key.split(",")) if key else ()
            num, _, den = val.partition("/")
            terms[comp] = Fraction(int(num), int(den or 1))
        return cls(terms)


def B(*parts: int) -> DescentElement:
    """The composition-basis element p_{c1} * ... * p_{ck}."""
    if any(p < 1 for p in parts):
        raise ValueError("composition parts must be positive")
    return DescentElement({tuple(parts): 1})


def d_convolve(a: DescentElement, b: DescentElement, N: int | None = None) -> DescentElement:
    """Convolution product: bilinear concatenation, optionally truncated at weight N."""
    out: dict[Composition, Fraction] = {}
    for c, u in a.terms.items():
        wc = sum(c)
        for d, v in b.terms.items():
            if N is not None and wc + sum(d) > N:
                continue
            k = c + d
            out[k] = out.get(k, 0) + u * v
    return DescentElement(out)


def d_coproduct(a: DescentElement) -> dict[tuple[Composition, Composition], Fraction]:
    """Coproduct for which the p_n are divided powers; multiplicative for *."""
    out: dict[tuple[Composition, Composition], Fraction] = {}
    for c, v in a.terms.items():
        for (l, r), m in _coproduct_basis(c).items():
            out[(l, r)] = out.get((l, r), 0) + v * m
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _coproduct_basis(c: Composition) -> dict[tuple[Composition, Composition], int]:
    acc = {((), ()): 1}
    for part in c:
        nxt: dict = {}
        for (l, r), m in acc.items():
            for i in range(part + 1):
                key = (l + ((i,) if i else ()), r + ((part - i,) if part - i else ()))
                nxt[key] = nxt.get(key, 0) + m
        acc = nxt
    return acc


def is_primitive(a: DescentElement) -> bool:
    expected: dict = {}
    for c, v in a.terms.items():
        if c:
            expected[(c, ())] = v
            expected[((), c)] = expected.get(((), c), 0) + v
        else:
            expected[((), ())] = v
    expected = {k: v for k, v in expected.items() if v}
    return d_coproduct(a) == expected


def d_exp(a: DescentElement, N: int) -> DescentElement:
    if a.component(0):
        raise ValueError("exp needs an element without degree-0 part")
    a = a.truncate(N)
    low = min(a.weights(), default=N + 1)
    out = DescentElement.unit()
    power = DescentElement.unit()
    for k in range(1, N // low + 1):
        power = d_convolve(power, a, N)
        out = out + power * Fraction(1, factorial(k))
    return out


def d_log(a: DescentElement, N: int) -> DescentElement:
    if a.component(0) != DescentElement.unit():
        raise ValueError("log needs degree-0 part equal to the unit")
    x = (a - DescentElement.unit()).truncate(N)
    low = min(x.weights(), default=N + 1)
    out = DescentElement.zero()
    power = DescentElement.unit()
    for k in range(1, N // low + 1):
        power = d_convolve(power, x, N)
        out = out + power * Fraction((-1) ** (k - 1), k)
    return out


def identity_series(N: int) -> DescentElement:
    """unit + B(1) + ... + B(N): the identity of T*(X) truncated at weight N."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return DescentElement({(): 1, **{(n,): 1 for n in range(1, N + 1)}})


def antipode_series(N: int) -> DescentElement:
    """Convolution inverse of the identity series, by the geometric series."""
    x = identity_series(N) - DescentElement.unit()
    out = DescentElement.unit()
    power = DescentElement.unit()
    for k in range(1, N + 1):
        power = d_convolve(power, x, N)
        out = out + power * (-1) ** k
    return out


# -- Zassenhaus series ----------------------------------------------------

LEFT, RIGHT = "left", "right"
PLAIN, ACCELERATED = "plain", "accelerated"


def dyadic_blocks(N: int) -> list[tuple[int, int]]:
    """Blocks [2^{m-1}, 2^m - 1] clipped at N: 1 | 2,3 | 4..7 | ..."""
    out, m = [], 1
    while 2 ** (m - 1) <= N:
        out.append((2 ** (m - 1), min(2 ** m - 1, N)))
        m += 1
    return out


@lru_cache(maxsize=None)
def _zassenhaus_blocks(N: int, side: str, mode: str) -> tuple[DescentElement, ...]:
    if side not in (LEFT, RIGHT) or mode not in (PLAIN, ACCELERATED):
        raise ValueError(f"bad series selector {side!r}/{mode!r}")
    blocks = dyadic_blocks(N) if mode == ACCELERATED else [(n, n) for n in range(1, N + 1)]
    rest = identity_series(N)
    out = []
    for lo, hi in blocks:
        piece = d_log(rest, N).between(lo, hi)
        out.append(piece)
        strip = d_exp(-piece, N)
        rest = d_convolve(strip, rest, N) if side == LEFT else d_convolve(rest, strip, N)
    return tuple(out)


def zassenhaus_blocks(N: int, side: str = LEFT, mode: str = PLAIN) -> list[DescentElement]:
    """The exponents of the factorization of the identity, one per factor."""
    _check_cap(N, WEIGHT_CAP)
    return list(_zassenhaus_blocks(N, side, mode))


def zassenhaus(N: int, side: str = LEFT, mode: str = PLAIN) -> list[DescentElement]:
    """[Z_1, ..., Z_N] (homogeneous components) for the chosen series.

    For the accelerated series the components are grouped into dyadic
    blocks by :func:`zassenhaus_blocks`; here they are returned split by weight.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    blocks = zassenhaus_blocks(N, side, mode)
    whole = DescentElement.zero()
    for b in blocks:
        whole = whole + b
    return [whole.component(n) for n in range(1, N + 1)]


def exp_product(blocks: Sequence[DescentElement], N: int, side: str = LEFT) -> DescentElement:
    """exp(b1) * exp(b2) * ... (left) or ... * exp(b2) * exp(b1) (right)."""
    out = DescentElement.unit()
    for b in blocks:
        e = d_exp(b, N)
        out = d_convolve(out, e, N) if side == LEFT else d_convolve(e, out, N)
    return out


def dynkin(N: int) -> list[DescentElement]:
    """[D_1, ..., D_N] with D_n = sum_{i+j=n} S_i * (j B(j))."""
    _check_cap(N, WEIGHT_CAP)
    S = antipode_series(N)
    out = []
    for n in range(1, N + 1):
        d = DescentElement.zero()
        for j in range(1, n + 1):
            d = d + d_convolve(S.component(n - j), B(j) * j)
        out.append(d)
    return out


# -- change of basis ------------------------------------------------------

def expand_words(coeffs: Mapping[Composition, Fraction], generators: Mapping[int, DescentElement]) -> DescentElement:
    """sum_I c_I G_{i1} * ... * G_{ik} in the composition basis."""
    out = DescentElement.zero()
    for word, c in coeffs.items():
        if not c:
            continue
        term = DescentElement.unit()
        for i in word:
            term = d_convolve(term, generators[i])
        out = out + term * c
    return out


def word_matrix(n: int, generators: Mapping[int, DescentElement]) -> tuple[list[Composition], list[list[Fraction]]]:
    """Rows: generator words of weight n; columns: B_C; both in comp_key order."""
    comps = list(compositions(n))
    rows = []
    for word in comps:
        e = expand_words({word: 1}, generators)
        rows.append([e[c] for c in comps])
    return comps, rows


def is_unitriangular(rows: list[list[Fraction]], comps: list[Composition]) -> bool:
    """Upper unitriangular, with nonzero entries only where the column refines the row."""
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if i == j and v != 1:
                return False
            if v and i != j and (j < i or not refines(comps[j], comps[i])):
                return False
    return True


def solve_in_words(target: DescentElement, generators: Mapping[int, DescentElement]) -> dict[Composition, Fraction]:
    """Coefficients c_I with target = sum_I c_I G_I, for homogeneous target.

    Each generator G_i must be B(i) times a nonzero scalar plus finer terms,
    which makes the system triangular along refinement.
    """
    n = target.weight()
    comps, rows = word_matrix(n, generators)
    x: dict[Composition, Fraction] = {}
    for j, c in enumerate(comps):
        acc = target[c] - sum(x[comps[i]] * rows[i][j] for i in range(j) if x.get(comps[i]))
        diag = rows[j][j]
        if not diag:
            raise ArithmeticError(f"singular change of basis at {c}")
        x[c] = acc / diag
    return {c: v for c, v in x.items() if v}


def change_of_basis(N: int) -> dict[int, dict[Composition, Fraction]]:
    """Coefficients c_{i1..ik} of D_n in the words of the right Zassenhaus series."""
    _check_cap(N, WEIGHT_CAP)
    zt = zassenhaus(N, RIGHT)
    gens = {i + 1: z for i, z in enumerate(zt)}
    return {n: solve_in_words(d, gens) for n, d in enumerate(dynkin(N), start=1)}


def inverse_change_of_basis(N: int, side: str = LEFT) -> dict[int, dict[Composition, Fraction]]:
    """Zassenhaus elements as noncommutative polynomials in the Dynkin operators."""
    _check_cap(N, WEIGHT_CAP)
    gens = {i + 1: d for i, d in enumerate(dynkin(N))}
    return {n: solve_in_words(z, gens) for n, z in enumerate(zassenhaus(N, side), start=1)}


def coefficient_table_json(table: Mapping[int, Mapping[Composition, Fraction]]) -> list[dict]:
    return [
        {"degree": n, "basis": "composition",
         "element": {format_composition(c): _fmt(v) for c, v in sorted(row.items(), key=lambda kv: comp_key(kv[0]))}}
        for n, row in sorted(table.items())
    ]


# -- permutations ---------------------------------------------------------

def perm_descents(p: Permutation) -> int:
    mask = 0
    for i in range(len(p) - 1):
        if p[i] > p[i + 1]:
            mask |= 1 << i
    return mask


def perm_mul(s: Permutation, t: Permutation) -> Permutation:
    """Composition s o t: i -> s(t(i))."""
    return tuple(s[i - 1] for i in t)


def perm_inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, 1):
        inv[v - 1] = i
    return tuple(inv)


@lru_cache(maxsize=None)
def _perm_table(n: int):
    perms = list(itertools.permutations(range(1, n + 1)))
    masks = [perm_descents(p) for p in perms]
    by_mask: dict[int, list[Permutation]] = {}
    for p, m in zip(perms, masks):
        by_mask.setdefault(m, []).append(p)
    return perms, masks, by_mask


class PermutationElement:
    """Element of Q[S_n]; the product is composition of permutations."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Permutation, Fraction | int] | None = None):
        self.n = n
        self.terms: dict[Permutation, Fraction] = {}
        for p, v in (terms or {}).items():
            if len(p) != n:
                raise ValueError(f"permutation {p} not in S_{n}")
            if v:
                self.terms[tuple(p)] = Fraction(v)

    @classmethod
    def identity(cls, n: int) -> PermutationElement:
        return cls(n, {tuple(range(1, n + 1)): 1})

    def __getitem__(self, p: Permutation) -> Fraction:
        return self.terms.get(tuple(p), Fraction(0))

    def __add__(self, other: PermutationElement) -> PermutationElement:
        out = dict(self.terms)
        for p, v in other.terms.items():
            out[p] = out.get(p, 0) + v
        return PermutationElement(self.n, out)

    def __neg__(self) -> PermutationElement:
        return PermutationElement(self.n, {p: -v for p, v in self.terms.items()})

    def __sub__(self, other: PermutationElement) -> PermutationElement:
        return self + (-other)

    def scale(self, c) -> PermutationElement:
        return PermutationElement(self.n, {p: v * c for p, v in self.terms.items()})

    def __mul__(self, other: PermutationElement) -> PermutationElement:
        if not isinstance(other, PermutationElement):
            return self.scale(other)
        if other.n != self.n:
            raise ValueError("degree mismatch")
        out: dict[Permutation, Fraction] = {}
        for s, u in self.terms.items():
            for t, v in other.terms.items():
                k = perm_mul(s, t)
                out[k] = out.get(k, 0) + u * v
        return PermutationElement(self.n, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"{_fmt(v)}*{''.join(map(str, p))}" for p, v in sorted(self.terms.items()))
        return f"PermutationElement({body or '0'})"


def ribbon_coefficients(a: DescentElement, n: int) -> list[Fraction]:
    """r[D] = coefficient of any permutation with descent mask D."""
    size = 1 << (n - 1) if n else 1
    r = [Fraction(0)] * size
    for c, v in a.terms.items():
        if sum(c) != n:
            raise NotHomogeneous(f"term {c} not of weight {n}")
        r[descent_mask(c)] += v
    # superset sums
    for bit in range(n - 1):
        for mask in range(size):
            if not mask >> bit & 1:
                r[mask] += r[mask | 1 << bit]
    return r


def _from_ribbons(r: Sequence[Fraction], n: int) -> DescentElement:
    size = len(r)
    b = list(r)
    for bit in range(n - 1):
        for mask in range(size):
            if not mask >> bit & 1:
                b[mask] -= b[mask | 1 << bit]
    return DescentElement({composition_of_mask(m, n): v for m, v in enumerate(b) if v})


def to_permutations(a: DescentElement, n: int | None = None) -> PermutationElement:
    """Solomon realization: B_C -> sum of permutations with Des in S(C)."""
    if n is None:
        n = a.weight()
    _check_cap(n)
    if n == 0:
        return PermutationElement(0, {(): a[()]})
    r = ribbon_coefficients(a, n)
    perms, masks, _ = _perm_table(n)
    return PermutationElement(n, {p: r[m] for p, m in zip(perms, masks) if r[m]})


def from_permutations(p: PermutationElement) -> DescentElement:
    """Inverse of :func:`to_permutations`; raises if p is not in the descent algebra."""
    n = p.n
    if n == 0:
        return DescentElement({(): p[()]})
    _, _, by_mask = _perm_table(n)
    r = [Fraction(0)] * (1 << (n - 1))
    for mask, members in by_mask.items():
        vals = {p[s] for s in members}
        if len(vals) != 1:
            raise ValueError("element is not constant on descent classes")
        r[mask] = vals.pop()
    return _from_ribbons(r, n)


def internal_product(a: DescentElement, b: DescentElement, verify: bool = False) -> DescentElement:
    """Composition a o b of homogeneous elements of equal weight.

    Only one representative permutation per descent class is evaluated;
    with ``verify`` the full group-algebra product is formed and checked to
    lie in the descent algebra.
    """
    n = a.weight() if a else b.weight()
    if b and b.weight() != n:
        raise NotHomogeneous("internal product needs equal weights")
    _check_cap(n)
    if n == 0:
        return DescentElement({(): a[()] * b[()]})
    if verify:
        full = to_permutations(a, n) * to_permutations(b, n)
        return from_permutations(full)
    ra = ribbon_coefficients(a, n)
    rb = ribbon_coefficients(b, n)
    perms, masks, by_mask = _perm_table(n)
    mask_of = dict(zip(perms, masks))
    inverses = [(perm_inverse(s), ra[m]) for s, m in zip(perms, masks) if ra[m]]
    out = [Fraction(0)] * (1 << (n - 1))
    for d, members in by_mask.items():
        pi = members[0]
        acc = 0
        for s_inv, coef in inverses:
            v = rb[mask_of[perm_mul(s_inv, pi)]]
            if v:
                acc += coef * v
        out[d] = Fraction(acc)
    return _from_ribbons(out, n)


def quasi_idempotence_scalar(a: DescentElement) -> Fraction | None:
    """c with a o a = c a, or None if a o a is not proportional to a."""
    sq = internal_product(a, a)
    if not a:
        return None
    c0, v0 = next(iter(a))
    scalar = sq[c0] / v0
    return scalar if sq == a * scalar else None


# -- words ----------------------------------------------------------------

def _add_into(acc: dict, key, v) -> None:
    nv = acc.get(key, 0) + v
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


def act_on_word(a: DescentElement, w: Word) -> TensorElement:
    """Action on T(X) (transpose of the letter permutation action)."""
    w = tuple(w)
    n = len(w)
    p = to_permutations(a.component(n), n)
    out: TensorElement = {}
    for s, v in p.terms.items():
        _add_into(out, tuple(w[i - 1] for i in s), v)
    return out


def act_on_dual_word(a: DescentElement, w: Word) -> TensorElement:
    """Letter permutation action on T*(X): sigma(w) = w_{sigma^-1(1)} ... ."""
    w = tuple(w)
    n = len(w)
    p = to_permutations(a.component(n), n)
    out: TensorElement = {}
    for s, v in p.terms.items():
        _add_into(out, tuple(w[i - 1] for i in perm_inverse(s)), v)
    return out


def act_on_tensor(a: DescentElement, t: Mapping[Word, Fraction], dual: bool = False) -> TensorElement:
    act = act_on_dual_word if dual else act_on_word
    out: TensorElement = {}
    for w, c in t.items():
        for u, v in act(a, w).items():
            _add_into(out, u, c * v)
    return out


def tensor_scale(t: Mapping[Word, Fraction], c) -> TensorElement:
    return {w: v * c for w, v in t.items() if v * c}


def tensor_add(*ts: Mapping[Word, Fraction]) -> TensorElement:
    out: TensorElement = {}
    for t in ts:
        for w, v in t.items():
            _add_into(out, w, v)
    return out


def concat(s: Mapping[Word, Fraction], t: Mapping[Word, Fraction]) -> TensorElement:
    out: TensorElement = {}
    for u, a in s.items():
        for v, b in t.items():
            _add_into(out, u + v, a * b)
    return out


def shuffle(s: Mapping[Word, Fraction], t: Mapping[Word, Fraction]) -> TensorElement:
    out: TensorElement = {}
    for u, a in s.items():
        for v, b in t.items():
            n = len(u) + len(v)
            for pos in itertools.combinations(range(n), len(u)):
                word, iu, iv = [], 0, 0
                posset = set(pos)
                for k in range(n):
                    if k in posset:
                        word.append(u[iu])
                        iu += 1
                    else:
                        word.append(v[iv])
                        iv += 1
                _add_into(out, tuple(word), a * b)
    return out


def unshuffle(w: Word) -> list[tuple[Word, Word]]:
    n = len(w)
    out = []
    for k in range(n + 1):
        for I in itertools.combinations(range(n), k):
            Iset = set(I)
            out.append((tuple(w[i] for i in I), tuple(w[j] for j in range(n) if j not in Iset)))
    return out


def bracket(s: Mapping[Word, Fraction], t: Mapping[Word, Fraction]) -> TensorElement:
    return tensor_add(concat(s, t), tensor_scale(concat(t, s), -1))


def left_bracketing(w: Word) -> TensorElement:
    """[...[y1, y2], ..., yn]."""
    w = tuple(w)
    if not w:
        return {}
    acc: TensorElement = {w[:1]: Fraction(1)}
    for y in w[1:]:
        acc = bracket(acc, {(y,): Fraction(1)})
    return acc


def is_lie_element(t: Mapping[Word, Fraction]) -> bool:
    """Primitivity for the unshuffling coproduct of T(X)."""
    cross: dict = {}
    for w, c in t.items():
        for u, v in unshuffle(w):
            if u and v:
                _add_into(cross, (u, v), c)
    return not cross


def endo_convolve_T(f: Callable[[Word], TensorElement], g: Callable[[Word], TensorElement], w: Word) -> TensorElement:
    """(f * g)(w) on T(X): unshuffle, apply, concatenate."""
    out: TensorElement = {}
    for u, v in unshuffle(tuple(w)):
        out = tensor_add(out, concat(f(u), g(v)))
    return out


def endo_convolve_Tstar(f: Callable[[Word], TensorElement], g: Callable[[Word], TensorElement], w: Word) -> TensorElement:
    """(f * g)(w) on T*(X): deconcatenate, apply, shuffle."""
    w = tuple(w)
    out: TensorElement = {}
    for k in range(len(w) + 1):
        out = tensor_add(out, shuffle(f(w[:k]), g(w[k:])))
    return out


# -- action on H ----------------------------------------------------------

class Endomorphism:
    """A graded linear endomorphism of H given on basis forests."""

    def __init__(self, on_forest: Callable[[Forest], HopfElement], H: HopfAlgebra):
        self._fn = on_forest
        self.H = H
        self._cache: dict[Forest, HopfElement] = {}

    def __call__(self, x: Forest | HopfElement) -> HopfElement:
        if isinstance(x, HopfElement):
            out = HopfElement()
            for f, c in x:
                out = out + self(f) * c
            return out
        if x not in self._cache:
            self._cache[x] = self._fn(x)
        return self._cache[x]

    def __mul__(self, other: Endomorphism) -> Endomorphism:
        """Convolution m o (f x g) o Delta."""
        def conv(x: Forest) -> HopfElement:
            out = HopfElement()
            for l, r, m in coproduct(x):
                out = out + (self(l) * other(r)) * m
            return out
        return Endomorphism(conv, self.H)

    def compose(self, other: Endomorphism) -> Endomorphism:
        return Endomorphism(lambda x: self(other(x)), self.H)

    def equals(self, other: Endomorphism) -> bool:
        return all(self(x) == other(x) for x in self.H.forests())


@lru_cache(maxsize=None)
def _alpha_basis(c: Composition, x: Forest) -> HopfElement:
    # p_{c1} * p_{rest} on the forest x
    deg = x.degree
    if sum(c) != deg:
        return HopfElement()
    if len(c) <= 1:
        return HopfElement({x: 1})
    out: dict[Forest, Fraction] = {}
    first = c[0]
    for l, r, m in coproduct(x):
        if l.degree != first:
            continue
        for f, v in _alpha_basis(c[1:], r):
            k = l * f
            out[k] = out.get(k, 0) + m * v
    return HopfElement(out)


def alpha_H(a: DescentElement, H: HopfAlgebra) -> Endomorphism:
    """The algebra map from the descent algebra to End(H): p_n -> projection on H_n."""
    def apply(x: Forest) -> HopfElement:
        out: dict[Forest, Fraction] = {}
        for c, v in a.terms.items():
            for f, m in _alpha_basis(c, x):
                out[f] = out.get(f, 0) + v * m
        return HopfElement(out)
    return Endomorphism(apply, H)


def identity_endomorphism(H: HopfAlgebra) -> Endomorphism:
    return Endomorphism(lambda x: HopfElement({x: 1}), H)
