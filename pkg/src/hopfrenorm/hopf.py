"""The Connes-Kreimer Hopf algebra of rooted trees and its ladder subalgebra.

Trees are canonical nested tuples: a :class:`Tree` is the sorted tuple of
its root's subtrees, so ``Tree()`` is the single vertex.  A :class:`Forest`
is a sorted tuple of trees, i.e. a commutative monomial; the empty forest is
the unit.  The grading is the number of vertices.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

ROOTED_TREES = "rooted_trees"
LADDERS = "ladders"
FAMILIES = (ROOTED_TREES, LADDERS)

# default truncation per family
DEFAULT_DEGREE = {ROOTED_TREES: 6, LADDERS: 8}


class Tree(tuple):
    """A rooted tree, stored as the canonically sorted tuple of its subtrees."""

    __slots__ = ()

    @classmethod
    def of(cls, children: Iterable[Tree] = ()) -> Tree:
        return cls(sorted(children, key=tree_key))

    @property
    def degree(self) -> int:
        return _tree_degree(self)

    def code(self) -> str:
        return "[" + ",".join(c.code() for c in self) + "]"

    def __repr__(self) -> str:
        return f"Tree({self.code()})"


class Forest(tuple):
    """A commutative monomial of trees; the empty forest is the unit of H."""

    __slots__ = ()

    @classmethod
    def of(cls, trees: Iterable[Tree] = ()) -> Forest:
        return cls(sorted(trees, key=tree_key))

    @property
    def degree(self) -> int:
        return sum(_tree_degree(t) for t in self)

    def __mul__(self, other: Forest) -> Forest:
        if not self:
            return other
        if not other:
            return self
        return Forest.of(tuple.__add__(self, other))

    def code(self) -> str:
        return ",".join(t.code() for t in self) if self else "1"

    def __repr__(self) -> str:
        return f"Forest({self.code()})"


UNIT = Forest()


@lru_cache(maxsize=None)
def _tree_degree(t: Tree) -> int:
    return 1 + sum(_tree_degree(c) for c in t)


@lru_cache(maxsize=None)
def tree_key(t: Tree) -> tuple:
    """Total order on canonical trees: degree first, then children recursively."""
    return (_tree_degree(t), tuple(tree_key(c) for c in t))


def forest_key(f: Forest) -> tuple:
    return (f.degree, len(f), tuple(tree_key(t) for t in f))


def ladder(n: int) -> Tree:
    """The chain with ``n >= 1`` vertices."""
    if n < 1:
        raise ValueError("ladders have at least one vertex")
    t = Tree()
    for _ in range(n - 1):
        t = Tree((t,))
    return t


def is_ladder(t: Tree) -> bool:
    while t:
        if len(t) != 1:
            return False
        t = t[0]
    return True


def forest(*trees: Tree) -> Forest:
    return Forest.of(trees)


# -- text encoding ------------------------------------------------------

def parse_tree(code: str) -> Tree:
    trees = _parse_seq(code.replace(" ", ""))
    if len(trees) != 1:
        raise ValueError(f"not a single tree: {code!r}")
    return trees[0]


def parse_forest(code: str) -> Forest:
    code = code.replace(" ", "")
    if code in ("", "1"):
        return UNIT
    return Forest.of(_parse_seq(code))


def _parse_seq(code: str) -> list[Tree]:
    pos = 0

    def tree() -> Tree:
        nonlocal pos
        if pos >= len(code) or code[pos] != "[":
            raise ValueError(f"expected '[' at {pos} in {code!r}")
        pos += 1
        kids = []
        while pos < len(code) and code[pos] != "]":
            kids.append(tree())
            if pos < len(code) and code[pos] == ",":
                pos += 1
        if pos >= len(code):
            raise ValueError(f"unbalanced brackets in {code!r}")
        pos += 1
        return Tree.of(kids)

    out = [tree()]
    while pos < len(code):
        if code[pos] != ",":
            raise ValueError(f"expected ',' at {pos} in {code!r}")
        pos += 1
        out.append(tree())
    return out


# -- enumeration --------------------------------------------------------

@lru_cache(maxsize=None)
def trees_of_degree(n: int, family: str = ROOTED_TREES) -> tuple[Tree, ...]:
    if n < 1:
        return ()
    if family == LADDERS:
        return (ladder(n),)
    if family != ROOTED_TREES:
        raise ValueError(f"unknown family {family!r}")
    out = {Tree.of(f) for f in enumerate_basis(n - 1, ROOTED_TREES)}
    return tuple(sorted(out, key=tree_key))


@lru_cache(maxsize=None)
def enumerate_basis(n: int, family: str = ROOTED_TREES) -> tuple[Forest, ...]:
    """All forests of degree ``n``: fewer trees first, then by tree order."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return (UNIT,)
    pool = [t for d in range(1, n + 1) for t in trees_of_degree(d, family)]
    pool.sort(key=tree_key, reverse=True)
    found = []

    def build(remaining: int, start: int, acc: list[Tree]):
        if remaining == 0:
            found.append(Forest.of(acc))
            return
        for i in range(start, len(pool)):
            t = pool[i]
            if t.degree <= remaining:
                acc.append(t)
                build(remaining - t.degree, i, acc)
                acc.pop()

    build(n, 0, [])
    return tuple(sorted(set(found), key=forest_key))


# -- coproduct and antipode ---------------------------------------------

Coproduct = dict  # (Forest, Forest) -> int multiplicity


def _mul_coproducts(a: Coproduct, b: Coproduct) -> Coproduct:
    out: Coproduct = {}
    for (l1, r1), m1 in a.items():
        for (l2, r2), m2 in b.items():
            k = (l1 * l2, r1 * r2)
            out[k] = out.get(k, 0) + m1 * m2
    return out


@lru_cache(maxsize=None)
def tree_coproduct(t: Tree) -> tuple[tuple[Forest, Forest, int], ...]:
    # Delta B+(f) = B+(f) x 1 + (id x B+) Delta(f)
    out: Coproduct = {(Forest((t,)), UNIT): 1}
    for (left, right), m in forest_coproduct(Forest(t)).items():
        key = (left, Forest((Tree.of(right),)))
        out[key] = out.get(key, 0) + m
    return tuple((l, r, m) for (l, r), m in out.items())


@lru_cache(maxsize=None)
def _forest_coproduct(f: Forest) -> tuple[tuple[Forest, Forest, int], ...]:
    acc: Coproduct = {(UNIT, UNIT): 1}
    for t in f:
        acc = _mul_coproducts(acc, {(l, r): m for l, r, m in tree_coproduct(t)})
    return tuple(sorted(((l, r, m) for (l, r), m in acc.items()),
                        key=lambda x: (forest_key(x[0]), forest_key(x[1]))))


def forest_coproduct(f: Forest) -> Coproduct:
    """Admissible-cut coproduct of a forest: {(pruned, trunk): multiplicity}."""
    return {(l, r): m for l, r, m in _forest_coproduct(Forest(f))}


def coproduct(f: Forest) -> list[tuple[Forest, Forest, int]]:
    return list(_forest_coproduct(Forest(f)))


def reduced_coproduct(f: Forest) -> list[tuple[Forest, Forest, int]]:
    return [(l, r, m) for l, r, m in _forest_coproduct(Forest(f)) if l and r]


class HopfElement:
    """Finite rational combination of forests."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Forest, Fraction | int] | None = None):
        self.terms: dict[Forest, Fraction] = {
            Forest(f): Fraction(c) for f, c in (terms or {}).items() if c
        }

    @classmethod
    def basis(cls, f: Forest) -> HopfElement:
        return cls({f: 1})

    def __iter__(self) -> Iterator[tuple[Forest, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, f: Forest) -> Fraction:
        return self.terms.get(f, Fraction(0))

    def __add__(self, other: HopfElement) -> HopfElement:
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, 0) + c
        return HopfElement(out)

    def __neg__(self) -> HopfElement:
        return HopfElement({f: -c for f, c in self.terms.items()})

    def __sub__(self, other: HopfElement) -> HopfElement:
        return self + (-other)

    def __mul__(self, other: HopfElement | Fraction | int) -> HopfElement:
        if not isinstance(other, HopfElement):
            return HopfElement({f: c * other for f, c in self.terms.items()})
        return product(self, other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self.terms == other.terms

    def homogeneous(self, n: int) -> HopfElement:
        return HopfElement({f: c for f, c in self.terms.items() if f.degree == n})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{f.code()}" for f, c in
                          sorted(self.terms.items(), key=lambda x: forest_key(x[0])))


def product(a: HopfElement, b: HopfElement) -> HopfElement:
    out: dict[Forest, Fraction] = {}
    for f, c in a.terms.items():
        for g, d in b.terms.items():
            k = f * g
            out[k] = out.get(k, 0) + c * d
    return HopfElement(out)


@lru_cache(maxsize=None)
def _tree_antipode(t: Tree) -> HopfElement:
    out = HopfElement({Forest((t,)): -1})
    for left, right, m in reduced_coproduct(Forest((t,))):
        out = out - antipode_forest(left) * HopfElement({right: m})
    return out


@lru_cache(maxsize=None)
def _antipode_forest(f: Forest) -> HopfElement:
    out = HopfElement({UNIT: 1})
    for t in f:
        out = out * _tree_antipode(t)
    return out


def antipode_forest(f: Forest) -> HopfElement:
    return _antipode_forest(Forest(f))


def antipode(x: HopfElement) -> HopfElement:
    out = HopfElement()
    for f, c in x.terms.items():
        out = out + antipode_forest(f) * c
    return out


def coproduct_element(x: HopfElement) -> dict[tuple[Forest, Forest], Fraction]:
    out: dict[tuple[Forest, Forest], Fraction] = {}
    for f, c in x.terms.items():
        for l, r, m in coproduct(f):
            out[(l, r)] = out.get((l, r), 0) + c * m
    return {k: v for k, v in out.items() if v}


class HopfAlgebra:
    """A truncated view of H: one family of trees up to degree ``N``."""

    def __init__(self, family: str = ROOTED_TREES, N: int | None = None):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        self.family = family
        self.N = DEFAULT_DEGREE[family] if N is None else int(N)
        if self.N < 0:
            raise ValueError("truncation must be nonnegative")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, HopfAlgebra)
                and (self.family, self.N) == (other.family, other.N))

    def __hash__(self) -> int:
        return hash((self.family, self.N))

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.family!r}, N={self.N})"

    def basis(self, n: int) -> tuple[Forest, ...]:
        if n > self.N:
            return ()
        return enumerate_basis(n, self.family)

    def forests(self) -> list[Forest]:
        return [f for n in range(self.N + 1) for f in enumerate_basis(n, self.family)]

    def trees(self) -> list[Tree]:
        return [t for n in range(1, self.N + 1) for t in trees_of_degree(n, self.family)]

    def contains_tree(self, t: Tree) -> bool:
        if t.degree > self.N:
            return False
        return self.family == ROOTED_TREES or is_ladder(t)
