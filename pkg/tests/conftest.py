from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hopfrenorm.series import LaurentSeries

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))


@st.composite
def series(draw, lo: int = -5, hi: int = 5, exact: bool | None = None):
    """Laurent series with support in [lo, hi]; truncated at hi+1 unless exact."""
    coeffs = draw(st.dictionaries(st.integers(lo, hi), rationals, max_size=hi - lo + 1))
    if exact is None:
        exact = draw(st.booleans())
    return LaurentSeries(coeffs, cap=None if exact else hi + 1, floor=lo)


@pytest.fixture
def eps_inv():
    return LaurentSeries.monomial(-1)
