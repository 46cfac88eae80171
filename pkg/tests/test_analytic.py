import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qec_pathcount.analytic import (
    BoundPair,
    RegimeWarning,
    ScalingParams,
    central_binomial_approx,
    central_binomial_half,
    crossover_sides,
    rotated_bounds,
    rotated_lower_bound,
    rotated_lower_bound_exact,
    rotated_preferred,
    rotated_upper_bound,
    scaling_law,
    unrotated_count,
    unrotated_count_alt,
)

FIG4 = ScalingParams(A=0.209, p_th=0.0733)


def test_unrotated_count():
    assert unrotated_count(3) == 9
    assert unrotated_count(5) == 50
    assert unrotated_count(5, both_axes=True) == 100
    with pytest.raises(ValueError):
        unrotated_count(4)


@pytest.mark.parametrize("d", range(3, 50, 2))
def test_unrotated_two_forms(d):
    d_e = (d + 1) // 2
    assert 2 * d * math.comb(d, d_e) == d * math.comb(d + 1, d_e)
    assert unrotated_count_alt(d) == unrotated_count(d)


def test_central_binomial():
    assert central_binomial_approx(1) == pytest.approx(4 / math.sqrt(math.pi))
    assert central_binomial_approx(1) / 2 - 1 == pytest.approx(0.1284, abs=1e-4)
    r10 = central_binomial_approx(10) / math.comb(20, 10)
    assert 1.0 <= r10 <= 1.02
    assert central_binomial_half(5) == 126 == math.comb(10, 5) // 2
    for n in range(1, 65):
        assert 2 * central_binomial_half(n) == math.comb(2 * n, n)
    with pytest.raises(ValueError):
        central_binomial_approx(0)


def test_central_binomial_large_n_no_overflow():
    assert math.isfinite(central_binomial_approx(500))


def test_exact_over_approx_within_one_eighth_n():
    # the Stirling estimate overshoots by a factor 1 + 1/(8n) + O(n^-2);
    # the inverse ratio sits inside the 1/(8n) envelope
    for n in range(1, 200):
        exact = math.comb(2 * n, n)
        assert abs(exact / central_binomial_approx(n) - 1) <= 1 / (8 * n)


def test_bounds_d3_d5():
    assert rotated_upper_bound(3) == 36
    assert rotated_upper_bound(5) == 800
    assert rotated_lower_bound(3) == pytest.approx(10.8)
    assert rotated_lower_bound_exact(3) == Fraction(54, 5)
    assert rotated_lower_bound(3, edge_constant=1) == pytest.approx(18.0)
    assert rotated_bounds(3, exact=18).contains(18)


def test_bound_pair_rejects_inverted():
    with pytest.raises(ValueError):
        BoundPair(lower=2.0, upper=1.0)


def test_scaling_law_examples():
    assert scaling_law(FIG4, 1e-4, 3) == pytest.approx(0.209 * (1e-4 / 0.0733) ** 2)
    assert scaling_law(FIG4, 1e-4, 3) == pytest.approx(3.89e-7, rel=1e-3)
    assert scaling_law(ScalingParams(1.0, 0.999999), 0.5, 3) == pytest.approx(0.25, rel=1e-5)
    with pytest.warns(RegimeWarning):
        assert scaling_law(FIG4, 0.0733, 9) == pytest.approx(0.209)


@given(st.floats(1e-8, 0.07), st.floats(1e-8, 0.07), st.sampled_from(range(3, 61, 2)))
def test_scaling_law_monotone(p1, p2, d):
    lo, hi = sorted((p1, p2))
    if hi > lo * (1 + 1e-9):
        assert scaling_law(FIG4, lo, d) < scaling_law(FIG4, hi, d)
    assert scaling_law(FIG4, lo, d + 2) < scaling_law(FIG4, lo, d)


def test_scaling_params_validation():
    for A, p_th in ((0, 0.1), (1, 0), (1, 1.2)):
        with pytest.raises(ValueError):
            ScalingParams(A, p_th)


def test_rotated_preferred_example():
    lhs, rhs = crossover_sides(1e-4, 3, 0.0733, 0.249)
    assert math.exp(lhs) == pytest.approx(1.07e-5, rel=0.01)
    assert math.exp(rhs) == pytest.approx(7.7e-3, rel=0.01)
    assert rotated_preferred(1e-4, 3, 0.0733, 0.249)


def test_rotated_preferred_equal_thresholds_small_d_e():
    # with p = p_tr = p_tur both sides reduce to p^((sqrt2-1) d_e), times 7.75 on the right
    for d_e in (1, 2, 3):
        assert rotated_preferred(0.0733, d_e, 0.0733, 0.0733)


@given(st.floats(1e-9, 0.2), st.floats(1e-9, 0.2), st.integers(1, 60))
def test_rotated_preferred_monotone_in_p(p1, p2, d_e):
    lo, hi = sorted((p1, p2))
    if rotated_preferred(hi, d_e):
        assert rotated_preferred(lo, d_e)


def test_crossover_log_space_no_underflow():
    lhs, rhs = crossover_sides(1e-6, 400, 0.0733, 0.249)
    assert math.isfinite(lhs) and math.isfinite(rhs)
