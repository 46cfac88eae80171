"""Log-linear least-squares fits of ``L = A (p / p_th)^d_e``.

Taking logs, ``ln L = ln A + d_e (ln p - ln p_th)``, so an ordinary linear
fit of ``ln L`` against ``d_e`` gives ``A = exp(intercept)`` and
``p_th = p exp(-slope)``. The inputs are exact model evaluations, so the fit
is unweighted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analytic import DEFAULT_EDGE_CONSTANT, ScalingParams, rotated_lower_bound_exact, rotated_upper_bound
from .lattice import check_distance, min_errors
from .rates import configuration_count, log_term

# Default sweep is odd d in 3..25. Widening to 3..101 at p = 1e-4 gives
# A = 0.209, p_th = 0.0733, 1 - R^2 = 6.32e-6; A depends strongly on the range.
DEFAULT_P = 1e-4
DEFAULT_D_MIN = 3
DEFAULT_D_MAX = 25


@dataclass(frozen=True)
class ScalingFit:
    params: ScalingParams
    r_squared: float
    p_used: float
    d_range: tuple[int, int]

    @property
    def A(self) -> float:
        return self.params.A

    @property
    def p_th(self) -> float:
        return self.params.p_th


def _fit_logs(d_e, log_L, p: float, d_range: tuple[int, int]) -> ScalingFit:
    x = np.asarray(d_e, dtype=float)
    y = np.asarray(log_L, dtype=float)
    if len(x) < 3:
        raise ValueError(f"need at least 3 points to fit, got {len(x)}")
    if len(np.unique(x)) != len(x):
        raise ValueError("d_e values must be distinct")
    if not np.all(np.isfinite(y)):
        raise ValueError("every L must be strictly positive and finite")
    design = np.column_stack([np.ones_like(x), x])
    (intercept, slope), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - (intercept + slope * x)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    params = ScalingParams(A=math.exp(intercept), p_th=p * math.exp(-slope))
    return ScalingFit(params, r2, p, d_range)


def fit_scaling(points, p: float) -> ScalingFit:
    """Fit ``(d_e, L)`` pairs taken at physical rate ``p``."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    pts = list(points)
    for _, L in pts:
        if not L > 0:
            raise ValueError(f"every L must be strictly positive, got {L}")
    d_e = [int(k) for k, _ in pts]
    d_range = (2 * min(d_e) - 1, 2 * max(d_e) - 1) if pts else (0, 0)
    return _fit_logs(d_e, [math.log(L) for _, L in pts], p, d_range)


def _odd_range(d_min: int, d_max: int) -> range:
    check_distance(d_min)
    check_distance(d_max)
    if d_max < d_min:
        raise ValueError(f"d_max={d_max} is below d_min={d_min}")
    return range(d_min, d_max + 1, 2)


def fit_model(
    model: str = "rotated",
    p: float = DEFAULT_P,
    d_min: int = DEFAULT_D_MIN,
    d_max: int = DEFAULT_D_MAX,
    both_axes: bool = False,
) -> ScalingFit:
    """Fit the leading-order rate of the rotated (exact counts) or unrotated code."""
    ds = _odd_range(d_min, d_max)
    d_e = [min_errors(d) for d in ds]
    logs = [log_term(configuration_count(d, model, both_axes), d * d, p, min_errors(d)) for d in ds]
    return _fit_logs(d_e, logs, p, (d_min, d_max))


def _log_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def fit_bound(
    which: str,
    p: float = DEFAULT_P,
    d_min: int = DEFAULT_D_MIN,
    d_max: int = DEFAULT_D_MAX,
    edge_constant: float = DEFAULT_EDGE_CONSTANT,
) -> ScalingFit:
    """Fit the rate implied by the upper or lower bound on the rotated count."""
    if which not in ("upper", "lower"):
        raise ValueError(f"which must be 'upper' or 'lower', got {which!r}")
    ds = _odd_range(d_min, d_max)
    logs = []
    for d in ds:
        k = min_errors(d)
        if which == "upper":
            lc = math.log(rotated_upper_bound(d))
        else:
            lc = _log_fraction(rotated_lower_bound_exact(d, edge_constant))
        logs.append(lc + log_term(1, d * d, p, k))
    return _fit_logs([min_errors(d) for d in ds], logs, p, (d_min, d_max))
