"""Student-t CDF: closed forms, symmetry, and the quadrature cross-check."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dummyreg import student_t_cdf, t_cdf_quadrature


class TestClosedForms:
    def test_half_at_zero(self):
        for df in (1, 2, 5, 30, 1000):
            assert student_t_cdf(0.0, df) == 0.5

    def test_cauchy_quartiles(self):
        assert abs(student_t_cdf(1.0, 1) - 0.75) < 1e-12
        assert abs(student_t_cdf(-1.0, 1) - 0.25) < 1e-12
        got = student_t_cdf(math.tan(math.pi * 0.3), 1)
        assert abs(got - 0.8) < 1e-12

    def test_textbook_value(self):
        assert abs(student_t_cdf(2.228, 10) - 0.9750) < 5e-5

    def test_df_one_required(self):
        with pytest.raises(ValueError):
            student_t_cdf(1.0, 0)

    def test_extreme_arguments_saturate(self):
        assert student_t_cdf(1e8, 5) == pytest.approx(1.0, abs=1e-15)
        assert student_t_cdf(-1e8, 5) == pytest.approx(0.0, abs=1e-15)
        assert student_t_cdf(math.inf, 5) == 1.0
        assert student_t_cdf(-math.inf, 5) == 0.0


class TestProperties:
    @settings(max_examples=300, deadline=None)
    @given(
        st.floats(min_value=-50, max_value=50, allow_nan=False),
        st.integers(min_value=1, max_value=500),
    )
    def test_symmetry_and_range(self, t, df):
        upper = student_t_cdf(t, df)
        lower = student_t_cdf(-t, df)
        assert 0.0 <= upper <= 1.0
        assert abs(upper + lower - 1.0) < 1e-12

    def test_monotone_on_grid(self):
        for df in (1, 2, 5, 10, 30, 100, 1000):
            grid = [t / 8 for t in range(-48, 49)]
            values = [student_t_cdf(t, df) for t in grid]
            assert all(a <= b for a, b in zip(values, values[1:]))

    def test_heavier_tails_at_lower_df(self):
        assert student_t_cdf(3.0, 1) < student_t_cdf(3.0, 100)


class TestQuadratureAgreement:
    def test_spot_values(self):
        assert abs(t_cdf_quadrature(0.0, 3) - 0.5) < 1e-9
        assert abs(t_cdf_quadrature(1.0, 1) - 0.75) < 1e-9

    def test_coarse_grid(self):
        worst = 0.0
        for df in (1, 4, 25, 400):
            for t in (-4.5, -2.0, -0.75, 0.0, 0.25, 1.5, 3.25):
                worst = max(worst,
                            abs(student_t_cdf(t, df) - t_cdf_quadrature(t, df)))
        assert worst < 1e-10

    def test_df_one_required(self):
        with pytest.raises(ValueError):
            t_cdf_quadrature(1.0, 0)
