"""Exact counting of minimum-length logical-path error configurations in
surface codes, and logical error-rate models built on those counts."""

from .analytic import (
    ROTATED_PARAMS,
    UNROTATED_PARAMS,
    BoundPair,
    RegimeWarning,
    ScalingParams,
    central_binomial_approx,
    central_binomial_half,
    rotated_lower_bound,
    rotated_preferred,
    rotated_upper_bound,
    scaling_law,
    unrotated_count,
)
from .counting import (
    OracleScopeExceeded,
    brute_force_count,
    count_error_patterns,
    count_paths,
    leading_count,
    path_ratio,
)
from .design import (
    CodeLayout,
    DesignResult,
    directional_rate,
    optimize_rectangular,
    recommend_variant,
    square_layout,
)
from .fitting import ScalingFit, fit_bound, fit_model, fit_scaling
from .lattice import CodeDistance, GridPosition, cell_parity, is_valid_transition
from .rates import (
    MeasurementSpec,
    NoiseSpec,
    RateResult,
    RegimeError,
    ancilla_count,
    correction_interval,
    logical_rate,
    measurement_failure_prob,
    measurement_logical_rate,
    mixture_rate,
    required_measurements,
    tail_bound,
    term_probability,
)

__version__ = "0.1.0"
