from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from hopfrenorm.hopf import (
    LADDERS,
    ROOTED_TREES,
    UNIT,
    Forest,
    HopfAlgebra,
    HopfElement,
    Tree,
    antipode,
    antipode_forest,
    coproduct,
    enumerate_basis,
    forest,
    forest_coproduct,
    ladder,
    parse_forest,
    parse_tree,
    product,
    trees_of_degree,
)
from hopfrenorm.suites import antipode_axioms, coassociative, coproduct_multiplicative, ladder_closed_form

l1, l2, l3 = ladder(1), ladder(2), ladder(3)
cherry = Tree.of([l1, l1])


def E(terms):
    return HopfElement(terms)


# -- an independent coproduct: enumerate edge subsets of an explicit tree ----

def to_parents(t: Tree):
    """Vertex list as parent pointers; vertex 0 is the root."""
    parents = [None]

    def walk(node, me):
        for child in node:
            parents.append(me)
            walk(child, len(parents) - 1)
    walk(t, 0)
    return parents


def subtree(parents, v, removed):
    kids = [c for c in range(len(parents)) if parents[c] == v and c not in removed]
    return Tree.of(subtree(parents, c, removed) for c in kids)


def brute_force_coproduct(t: Tree) -> dict:
    parents = to_parents(t)
    edges = range(1, len(parents))  # edge identified by its lower vertex

    def ancestors(v):
        while parents[v] is not None:
            yield v
            v = parents[v]

    out = {(Forest((t,)), UNIT): 1}
    for k in range(len(parents)):
        for cut in itertools.combinations(edges, k):
            cut = set(cut)
            # admissible: at most one cut edge on every path from the root
            if any(len(cut & set(ancestors(v))) > 1 for v in range(len(parents))):
                continue
            pruned = Forest.of(subtree(parents, v, cut) for v in cut)
            trunk = Forest((subtree(parents, 0, cut),))
            out[(pruned, trunk)] = out.get((pruned, trunk), 0) + 1
    return out


@pytest.mark.parametrize("t", [t for n in range(1, 7) for t in trees_of_degree(n)])
def test_coproduct_matches_cut_enumeration(t):
    assert forest_coproduct(Forest((t,))) == brute_force_coproduct(t)


def test_tree_counts():
    # rooted unlabeled trees: 1, 1, 2, 4, 9, 20, 48
    assert [len(trees_of_degree(n)) for n in range(1, 8)] == [1, 1, 2, 4, 9, 20, 48]


def test_canonical_encoding():
    a = Tree.of([l2, l1])
    b = Tree.of([l1, l2])
    assert a == b and a.code() == b.code() == "[[],[[]]]"
    assert parse_tree("[[[]],[]]") == a
    assert parse_tree("[]") == l1 and parse_tree("[[]]") == l2
    assert parse_tree("[[],[]]") == cherry
    assert parse_forest("[[]],[]") == forest(l1, l2)
    assert parse_forest("1") == UNIT
    with pytest.raises(ValueError):
        parse_tree("[],[]")
    with pytest.raises(ValueError):
        parse_tree("[[]")


def test_product_examples():
    assert product(E({forest(l1): 1}), E({forest(l1): 1})) == E({forest(l1, l1): 1})
    assert forest(l1, l1).degree == 2
    x = E({forest(l2): 3})
    assert E({UNIT: 1}) * x == x
    assert (E({forest(l1): 1}) + E({forest(l2): 1})) * E({forest(l1): 1}) == \
        E({forest(l1, l1): 1, forest(l1, l2): 1})


def test_coproduct_examples():
    assert forest_coproduct(forest(l1)) == {(forest(l1), UNIT): 1, (UNIT, forest(l1)): 1}
    assert forest_coproduct(forest(l2)) == {
        (forest(l2), UNIT): 1, (UNIT, forest(l2)): 1, (forest(l1), forest(l1)): 1}
    assert forest_coproduct(forest(cherry)) == {
        (forest(cherry), UNIT): 1, (UNIT, forest(cherry)): 1,
        (forest(l1), forest(l2)): 2, (forest(l1, l1), forest(l1)): 1}


def test_antipode_examples():
    assert antipode(E({forest(l1): 1})) == E({forest(l1): -1})
    assert antipode(E({forest(l2): 1})) == E({forest(l2): -1, forest(l1, l1): 1})
    assert antipode(E({forest(l1, l1): 1})) == E({forest(l1, l1): 1})


def test_enumerate_basis_examples():
    assert enumerate_basis(0) == (UNIT,)
    assert enumerate_basis(2, ROOTED_TREES) == (forest(l2), forest(l1, l1))
    assert enumerate_basis(3, LADDERS) == (forest(l3), forest(l1, l2), forest(l1, l1, l1))


def test_basis_sizes():
    # forests of rooted trees: 1, 1, 2, 4, 9, 20, 48 (shifted); ladders: partitions
    assert [len(enumerate_basis(n)) for n in range(7)] == [1, 1, 2, 4, 9, 20, 48]
    assert [len(enumerate_basis(n, LADDERS)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_truncated_view():
    H = HopfAlgebra(LADDERS, 3)
    assert H.trees() == [l1, l2, l3]
    assert not H.contains_tree(cherry)
    with pytest.raises(ValueError):
        HopfAlgebra("graphs", 3)


all_forests = [f for n in range(7) for f in enumerate_basis(n)]
forests = st.sampled_from(all_forests)


@given(forests)
def test_coassociativity(f):
    assert coassociative(f)


@given(forests, forests)
def test_coproduct_is_multiplicative(f, g):
    if f.degree + g.degree <= 8:
        assert coproduct_multiplicative(f, g)


@given(forests)
def test_antipode_axioms(f):
    assert antipode_axioms(f)


@given(forests)
def test_grading(f):
    assert all(l.degree + r.degree == f.degree for l, r, _ in coproduct(f))
    assert all(x.degree == f.degree for x, _ in antipode_forest(f))


@given(forests, forests)
def test_antipode_is_multiplicative(f, g):
    assert antipode_forest(f * g) == antipode_forest(f) * antipode_forest(g)


@pytest.mark.parametrize("n", range(1, 9))
def test_ladder_closed_form(n):
    assert ladder_closed_form(n)
