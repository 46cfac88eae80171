"""Closed-form counts, bounds and the scaling law.

All integer-valued quantities are exact Python ints. Real-valued bounds are
formed from exact integers at the last step, or returned as ``Fraction`` where
an exact comparison is needed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .lattice import check_distance, min_errors

SQRT2 = math.sqrt(2.0)
CROSSOVER_CONSTANT = 7.75
DEFAULT_EDGE_CONSTANT = 0.6


class RegimeWarning(UserWarning):
    """An approximation is being used outside the regime where it is accurate."""


@dataclass(frozen=True)
class ScalingParams:
    """Prefactor and threshold of ``L ~ A (p / p_th)^d_e``."""

    A: float
    p_th: float

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError(f"A must be positive, got {self.A}")
        if not 0 < self.p_th < 1:
            raise ValueError(f"p_th must lie in (0, 1), got {self.p_th}")


ROTATED_PARAMS = ScalingParams(A=2.09e-1, p_th=7.33e-2)
UNROTATED_PARAMS = ScalingParams(A=1.62, p_th=2.49e-1)


@dataclass(frozen=True)
class BoundPair:
    lower: float
    upper: float
    exact_reference: int | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    def contains(self, value: int) -> bool:
        return self.lower <= value <= self.upper


def unrotated_count(d: int, both_axes: bool = False) -> int:
    """``d * binom(d, d_e)`` configurations for the unrotated code."""
    check_distance(d)
    c = d * math.comb(d, min_errors(d))
    return 2 * c if both_axes else c


def unrotated_count_alt(d: int) -> Fraction:
    """The same count written as ``(d / 2) * binom(d + 1, d_e)``."""
    check_distance(d)
    return Fraction(d, 2) * math.comb(d + 1, min_errors(d))


def central_binomial_approx(n: int) -> float:
    """Stirling estimate ``4^n / sqrt(pi n)`` of ``binom(2n, n)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    # log form so that large n does not overflow before the division
    return math.exp(n * math.log(4.0) - 0.5 * math.log(math.pi * n))


def central_binomial_half(n: int) -> int:
    """``binom(2n - 1, n)``, which is exactly half of ``binom(2n, n)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.comb(2 * n - 1, n)


def rotated_upper_bound(d: int) -> int:
    """Union bound ``d 2^(d-1) binom(d, d_e)`` on the rotated ``C_{d_e}``."""
    check_distance(d)
    return d * 2 ** (d - 1) * math.comb(d, min_errors(d))


def rotated_lower_bound_exact(d: int, edge_constant: float | Fraction = DEFAULT_EDGE_CONSTANT) -> Fraction:
    """Lower bound as an exact rational.

    A float ``edge_constant`` is read through its shortest decimal repr, so
    ``0.6`` means exactly 3/5.
    """
    check_distance(d)
    c = Fraction(repr(edge_constant)) if isinstance(edge_constant, float) else Fraction(edge_constant)
    return c * rotated_upper_bound(d) / 2 ** (min_errors(d) - 1)


def rotated_lower_bound(d: int, edge_constant: float = DEFAULT_EDGE_CONSTANT) -> float:
    """``C d 2^(d-1) binom(d, d_e) / 2^(d_e - 1)``; ``C`` absorbs edge effects."""
    return float(rotated_lower_bound_exact(d, edge_constant))


def rotated_bounds(d: int, edge_constant: float = DEFAULT_EDGE_CONSTANT, exact: int | None = None) -> BoundPair:
    return BoundPair(
        lower=rotated_lower_bound(d, edge_constant),
        upper=float(rotated_upper_bound(d)),
        exact_reference=exact,
    )


def scaling_law(params: ScalingParams, p: float, d: int) -> float:
    """``A (p / p_th)^d_e`` with ``d_e = ceil(d / 2)``."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if p >= params.p_th:
        warnings.warn(
            f"p={p:g} is not below the threshold p_th={params.p_th:g}; the scaling law does not apply",
            RegimeWarning,
            stacklevel=2,
        )
    return params.A * math.exp(min_errors(d) * (math.log(p) - math.log(params.p_th)))


def crossover_sides(p: float, d_e: int, p_tr: float, p_tur: float) -> tuple[float, float]:
    """Natural logs of both sides of the rotated-vs-unrotated comparison.

    Left: ``p^((sqrt2 - 1) d_e)``. Right: ``7.75 p_tr^(sqrt2 d_e) / p_tur^d_e``.
    """
    for name, val in (("p", p), ("p_tr", p_tr), ("p_tur", p_tur)):
        if not 0 < val < 1:
            raise ValueError(f"{name} must lie in (0, 1), got {val}")
    if d_e < 1:
        raise ValueError(f"d_e must be positive, got {d_e}")
    lhs = (SQRT2 - 1.0) * d_e * math.log(p)
    rhs = math.log(CROSSOVER_CONSTANT) + SQRT2 * d_e * math.log(p_tr) - d_e * math.log(p_tur)
    return lhs, rhs


def rotated_preferred(p: float, d_e: int, p_tr: float = ROTATED_PARAMS.p_th, p_tur: float = UNROTATED_PARAMS.p_th) -> bool:
    lhs, rhs = crossover_sides(p, d_e, p_tr, p_tur)
    return lhs <= rhs
