from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given

from hopfrenorm.series import (
    FloorExceeded,
    LaurentSeries,
    TruncationError,
    eps,
    format_rational,
    ls_add,
    ls_mul,
    parse_rational,
    pole_bound_scope,
    r_minus,
    r_plus,
    rb_check,
)

from conftest import series

L = LaurentSeries


def test_rationals_are_reduced():
    assert parse_rational("6/4") == Fraction(3, 2)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(5)) == "5"


def test_add_cancellation():
    assert ls_add(eps(-1) + 1, -eps(-1) + eps(1)) == 1 + eps(1)


def test_add_zero_identity():
    x = L({-2: 3, 1: Fraction(1, 2)}, cap=4)
    assert L.zero() + x == x


def test_add_cap_is_minimum():
    s = ls_add(L({0: 3}, cap=2), L({2: 1}, cap=5))
    assert s.cap == 2
    assert s.coeffs == {0: 3}


def test_mul_difference_of_squares():
    assert ls_mul(eps(-1) + 1, eps(-1) - 1) == eps(-2) - 1


def test_mul_shift_lowers_cap():
    a = L({0: 2, 1: 5}, cap=3)
    p = eps(-1) * a
    assert p.cap == 2
    assert p.coeffs == {-1: 2, 0: 5}


def test_mul_identity():
    x = L({-1: 4, 3: 1}, cap=6)
    assert L.one() * x == x


def test_reading_beyond_cap_raises():
    with pytest.raises(TruncationError):
        L({0: 1}, cap=2)[2]


def test_floor_exceeded():
    with pole_bound_scope(3):
        with pytest.raises(FloorExceeded):
            eps(-2) * eps(-2)


def test_r_minus_examples():
    x = 2 * eps(-2) + 3 + eps(1)
    assert r_minus(x) == 2 * eps(-2)
    assert r_minus(5 + eps(3)).is_zero()
    p = eps(-1) - 7 * eps(-3)
    assert r_minus(p) == p


def test_r_minus_is_exact_even_from_truncated_input():
    out = r_minus(L({-2: 1, 0: 4}, cap=1))
    assert out.exact


def test_r_plus_examples():
    x = 2 * eps(-2) + 3 + eps(1)
    assert r_plus(x) == 3 + eps(1)
    assert r_plus(eps(-4) + eps(-1)).is_zero()
    assert r_minus(x) + r_plus(x) == x


def test_rb_examples():
    assert rb_check(eps(-1), eps(-1))
    assert r_minus(eps(-1)) * r_minus(eps(-1)) == eps(-2)
    assert rb_check(eps(1), eps(1))
    assert rb_check(eps(-1), eps(1))


def test_equality_on_disjoint_windows_is_an_error():
    a = L({3: 1}, cap=4, floor=3)
    b = L({-5: 1}, cap=-4, floor=-5)
    with pytest.raises(TruncationError):
        a.equals(b)


def test_equality_ignores_unknown_tail():
    assert L({0: 1, 1: 2}, cap=2) == L({0: 1, 1: 2, 5: 9}, cap=7)
    assert L({0: 1, 1: 2}, cap=2) != L({0: 1, 1: 3}, cap=7)


def test_json_schema_and_roundtrip():
    x = L({-2: Fraction(1, 3), 0: -2}, cap=3, floor=-2)
    obj = x.to_json()
    assert obj == {"floor": -2, "cap": 3, "coeffs": {"-2": "1/3", "0": "-2"}}
    y = L.from_json(json.loads(json.dumps(obj)))
    assert y == x and y.cap == 3 and y.floor == -2


def test_str():
    assert str(L({-1: -1, 0: Fraction(1, 2)}, cap=2)) == "-eps^-1 + 1/2 + O(eps^2)"


# -- properties -------------------------------------------------------------

@given(series(), series())
def test_rota_baxter_identity(x, y):
    assert rb_check(x, y)


@given(series())
def test_projections(x):
    m, p = r_minus(x), r_plus(x)
    assert r_minus(m) == m
    assert r_plus(p) == p
    assert r_minus(p).is_zero()
    assert r_plus(m).is_zero()
    assert m + p == x


@given(series(), series())
def test_images_are_subalgebras(x, y):
    assert (r_minus(x) * r_minus(y)).is_polar()
    assert (r_plus(x) * r_plus(y)).is_holomorphic()


@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)


@given(series(), series())
def test_mul_matches_naive_cauchy_product(a, b):
    prod = a * b
    for k in range(prod.floor, prod.cap if prod.cap is not None else 11):
        naive = sum((a.coeffs.get(i, 0) * b.coeffs.get(k - i, 0) for i in range(-5, 6)), Fraction(0))
        assert prod[k] == naive


@given(series())
def test_json_roundtrip_property(x):
    y = L.from_json(json.loads(json.dumps(x.to_json())))
    assert y == x and y.cap == x.cap
