from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfrenorm.characters import (
    Character,
    NotConnected,
    conv_inverse,
    convolve,
    is_character,
    unit_map,
    zero_map,
)
from hopfrenorm.fixtures import holomorphic, ladder_exponential, ladder_poles, random_polar
from hopfrenorm.hopf import LADDERS, ROOTED_TREES, HopfAlgebra, forest, ladder
from hopfrenorm.renorm import (
    assemble,
    beta,
    bogoliubov_decompose,
    exp_factorize,
    fixed_point_holds,
    is_polar_pair,
    mu_extract,
    verify_theorem,
    zassenhaus_components,
    zassenhaus_counterterm,
    zeta_extract,
)
from hopfrenorm.series import LaurentSeries, eps
from hopfrenorm.suites import bridge_character, check_character, telescoping

l1, l2 = ladder(1), ladder(2)
half = Fraction(1, 2)


def one_loop(N=1):
    H = HopfAlgebra(LADDERS, N)
    return Character.from_tree_values(H, {l1: eps(-1) + 7})


def poles_two():
    return Character.from_tree_values(HopfAlgebra(LADDERS, 2), {l1: eps(-1), l2: eps(-2)})


def test_one_loop_subtraction():
    pair = bogoliubov_decompose(one_loop())
    assert pair.phi_minus(forest(l1)) == -eps(-1)
    assert pair.phi_plus(forest(l1)) == LaurentSeries.constant(7)


def test_ladder_toy_degree_two():
    pair = bogoliubov_decompose(ladder_exponential(2))
    assert pair.phi_bar(forest(l2)) == -half * eps(-2)
    assert pair.phi_minus(forest(l2)) == half * eps(-2)
    assert pair.phi_plus(forest(l2)).is_zero()


def test_holomorphic_character_needs_no_counterterm():
    phi = holomorphic(4)
    pair = bogoliubov_decompose(phi)
    assert pair.phi_minus == unit_map(phi.H)
    assert pair.phi_plus == phi
    report = verify_theorem(phi)
    assert report.agreement


def test_unit_short_circuit():
    H = HopfAlgebra(ROOTED_TREES, 3)
    pair = bogoliubov_decompose(unit_map(H))
    assert pair.phi_minus == unit_map(H) and pair.phi_bar == zero_map(H)
    fact = exp_factorize(unit_map(H))
    assert fact.factors_minus == [] and fact.factors_plus == []
    assert assemble(fact, H) == (unit_map(H), unit_map(H))


def test_zeta_and_mu():
    phi = ladder_poles(3)
    z = zeta_extract(phi, 1)
    assert z(forest(l1)) == phi(forest(l1)) and z(forest(l2)).is_zero()
    with pytest.raises(NotConnected):
        zeta_extract(phi, 2)
    with pytest.raises(NotConnected):
        mu_extract(phi, 2)
    assert mu_extract(phi, 1) == z
    e = unit_map(phi.H)
    assert mu_extract(e, 2) == zero_map(phi.H)


def test_zeta_of_two_connected():
    H = HopfAlgebra(LADDERS, 3)
    phi = Character.from_tree_values(H, {l2: eps(-2), ladder(3): eps(-1)})
    z = zeta_extract(phi, 2)
    assert z(forest(l2)) == eps(-2) and z(forest(l1, l1)).is_zero()
    mu = mu_extract(phi, 2)
    assert mu(forest(ladder(3))) == eps(-1) and mu(forest(l2)) == eps(-2)


def test_exp_factorize_examples():
    fact = exp_factorize(one_loop())
    assert fact.factors_minus[0](forest(l1)) == eps(-1)
    assert fact.factors_plus[0](forest(l1)) == LaurentSeries.constant(7)

    toy = exp_factorize(ladder_exponential(5))
    assert toy.factors_minus[0](forest(l1)) == eps(-1)
    assert all(not lam.values for lam in toy.factors_minus[1:] + toy.factors_plus)

    two = exp_factorize(poles_two())
    assert two.factors_minus[1](forest(l2)) == half * eps(-2)
    assert two.factors_plus[1](forest(l2)).is_zero()


def test_assemble_examples():
    fact = exp_factorize(poles_two())
    minus_inv, plus = assemble(fact)
    assert minus_inv(forest(l2)) == eps(-2)
    pair = bogoliubov_decompose(poles_two())
    assert minus_inv == conv_inverse(pair.phi_minus)
    single = exp_factorize(one_loop())
    assert assemble(single)[0](forest(l1)) == eps(-1)


def test_factor_supports():
    phi = random_polar(5, 2)
    for mode, ranges in (("plain", [(n, n) for n in range(1, 6)]),
                         ("accelerated", [(1, 1), (2, 3), (4, 5)])):
        fact = exp_factorize(phi, mode)
        assert fact.blocks == ranges
        for (lo, hi), m, p in zip(fact.blocks, fact.factors_minus, fact.factors_plus):
            assert all(lo <= x.degree <= hi for x in list(m.values) + list(p.values))
            assert all(v.is_polar() for v in m.values.values())
            assert all(v.is_holomorphic() for v in p.values.values())


@pytest.mark.parametrize("N, levels", [(1, 1), (2, 2), (3, 2), (6, 3), (7, 3), (8, 4)])
def test_accelerated_level_count(N, levels):
    phi = ladder_poles(N)
    assert len(exp_factorize(phi, "accelerated").blocks) == levels
    assert len(exp_factorize(phi, "plain").blocks) == N


@pytest.mark.parametrize("phi", [ladder_exponential(6), ladder_poles(6)], ids=["exp", "poles"])
def test_theorem_on_ladder_fixtures(phi):
    report = verify_theorem(phi)
    assert report.agreement, report.summary()
    assert check_character(phi) == (True, "")


def test_phi_bar_is_not_a_character():
    assert not is_character(bogoliubov_decompose(ladder_poles(3)).phi_bar)


def test_counterterm_examples():
    toy = ladder_exponential(4)
    pair = bogoliubov_decompose(toy)
    comps = zassenhaus_counterterm(toy, pair)
    assert comps[0](forest(l1)) == conv_inverse(pair.phi_minus)(forest(l1)) == eps(-1)
    assert not comps[1].values
    e = unit_map(HopfAlgebra(ROOTED_TREES, 3))
    assert all(not c.values for c in zassenhaus_counterterm(e))


def test_beta_examples():
    toy = ladder_exponential(4)
    b = beta(toy)
    assert b[0](forest(l1)) == -eps(-1)
    pair = bogoliubov_decompose(toy)
    zt2 = zassenhaus_components(pair.phi_minus, "right")[1]
    assert b[1] == zt2.scale(2)
    e = unit_map(HopfAlgebra(ROOTED_TREES, 3))
    assert all(not x.values for x in beta(e))


def test_beta_of_random_character_has_dynkin_degree():
    phi = random_polar(4, 9)
    b = beta(phi)
    for n, comp in enumerate(b, start=1):
        assert all(x.degree == n for x in comp.values)


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6), st.integers(1, 5))
def test_theorem_random(seed, N):
    phi = random_polar(N, seed)
    ok, why = check_character(phi)
    assert ok, why
    pair = bogoliubov_decompose(phi)
    assert fixed_point_holds(phi, pair)
    assert is_polar_pair(pair.phi_minus, pair.phi_plus)
    assert convolve(conv_inverse(pair.phi_minus), pair.phi_plus) == phi


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6))
def test_telescoping_random(seed):
    ok, why = telescoping(random_polar(5, seed))
    assert ok, why


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6))
def test_bridge_random(seed):
    ok, why = bridge_character(random_polar(4, seed), 4)
    assert ok, why
