import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qec_pathcount.fitting import fit_bound, fit_model, fit_scaling


def test_exact_power_law_recovery():
    A, p_th, p = 0.5, 0.05, 1e-4
    pts = [(k, A * (p / p_th) ** k) for k in range(2, 11)]
    f = fit_scaling(pts, p)
    assert f.A == pytest.approx(A, rel=1e-10)
    assert f.p_th == pytest.approx(p_th, rel=1e-10)
    assert f.r_squared == pytest.approx(1.0, abs=1e-12)
    assert f.d_range == (3, 19)


@given(st.floats(1e-3, 10), st.floats(1e-3, 0.5), st.floats(1e-6, 1e-3), st.floats(1e-3, 1e3))
def test_scale_equivariance(A, p_th, p, c):
    rng = np.random.default_rng(0)
    pts = [(k, A * (p / p_th) ** k * math.exp(0.01 * rng.standard_normal())) for k in range(2, 12)]
    base = fit_scaling(pts, p)
    scaled = fit_scaling([(k, c * L) for k, L in pts], p)
    assert scaled.A == pytest.approx(c * base.A, rel=1e-8)
    assert scaled.p_th == pytest.approx(base.p_th, rel=1e-8)
    assert scaled.r_squared == pytest.approx(base.r_squared, abs=1e-9)


def test_fit_rejects_bad_input():
    with pytest.raises(ValueError):
        fit_scaling([(2, 1e-3), (3, 1e-4)], 1e-4)
    with pytest.raises(ValueError):
        fit_scaling([(2, 1e-3), (2, 1e-4), (2, 1e-5)], 1e-4)
    with pytest.raises(ValueError):
        fit_scaling([(2, 1e-3), (3, 0.0), (4, 1e-5)], 1e-4)


def test_rotated_fit_wide_range_matches_published():
    f = fit_model("rotated", 1e-4, 3, 101)
    assert f.A == pytest.approx(0.209, rel=0.01)
    assert f.p_th == pytest.approx(0.0733, rel=0.005)
    assert 1 - f.r_squared == pytest.approx(6.32e-6, rel=0.01)


def test_unrotated_fit_wide_range():
    f = fit_model("unrotated", 1e-4, 3, 101)
    assert f.p_th == pytest.approx(0.249, rel=0.01)
    assert f.A == pytest.approx(1.62, rel=0.15)


def test_both_axes_doubles_A_only():
    one = fit_model("rotated", 1e-4, 3, 25)
    two = fit_model("rotated", 1e-4, 3, 25, both_axes=True)
    assert two.A == pytest.approx(2 * one.A, rel=1e-10)
    assert two.p_th == pytest.approx(one.p_th, rel=1e-10)


def test_bound_fits():
    up = fit_bound("upper", 1e-4, 3, 101)
    lo = fit_bound("lower", 1e-4, 3, 101)
    exact = fit_model("rotated", 1e-4, 3, 101)
    assert up.p_th == pytest.approx(6.22e-2, rel=0.02)
    assert lo.p_th == pytest.approx(1.24e-1, rel=0.02)
    assert lo.p_th > exact.p_th > up.p_th
    short = [fit_bound(w, 1e-4, 3, 25).p_th for w in ("lower", "upper")]
    assert short[0] > fit_model("rotated", 1e-4, 3, 25).p_th > short[1]
    with pytest.raises(ValueError):
        fit_bound("middle")


def test_fit_stability_once_range_is_long():
    prev = fit_model("rotated", 1e-4, 3, 15).p_th
    for d_max in range(17, 41, 2):
        cur = fit_model("rotated", 1e-4, 3, d_max).p_th
        assert abs(cur / prev - 1) < 0.01
        prev = cur


def test_default_range_is_3_to_25():
    f = fit_model()
    assert f.d_range == (3, 25)
    assert f.p_used == 1e-4
