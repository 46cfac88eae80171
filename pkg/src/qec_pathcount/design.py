"""Layout choices under a qubit budget.

A rectangular rotated patch of height ``h`` and width ``w`` uses ``h w``
data and ``h w - 1`` syndrome qubits. Logical X chains run top to bottom and
so are protected by ``h``; logical Z chains run left to right and are
protected by ``w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .analytic import (
    ROTATED_PARAMS,
    UNROTATED_PARAMS,
    ScalingParams,
    crossover_sides,
)
from .lattice import min_errors


@dataclass(frozen=True)
class CodeLayout:
    h: int
    w: int
    variant: str = "rotated"

    def __post_init__(self):
        if self.h < 2 or self.w < 2:
            raise ValueError(f"layout needs h, w >= 2, got h={self.h}, w={self.w}")

    @property
    def data_qubits(self) -> int:
        return self.h * self.w

    @property
    def total_qubits(self) -> int:
        return 2 * self.h * self.w - 1

    def transpose(self) -> "CodeLayout":
        return CodeLayout(self.w, self.h, self.variant)


@dataclass(frozen=True)
class Evaluated:
    layout: CodeLayout
    L_x: float
    L_z: float

    @property
    def L_total(self) -> float:
        return combined_rate(self.L_x, self.L_z)


@dataclass(frozen=True)
class DesignResult:
    layout: CodeLayout
    L_x: float
    L_z: float
    L_total: float
    visited: list[Evaluated] = field(default_factory=list)


def combined_rate(L_x: float, L_z: float) -> float:
    """Probability of at least one of two independent logical failures."""
    return L_x + L_z - L_x * L_z


def square_layout(Q: int) -> CodeLayout:
    """Near-square patch for budget ``Q``: ``w = floor(sqrt((Q + 1) / 2))``, ``h`` is ``w + 1`` if it fits."""
    if Q < 7:
        raise ValueError(f"budget Q must be >= 7 (smallest 2x2 patch), got {Q}")
    w = math.isqrt((Q + 1) // 2)
    h = w + 1 if 2 * w * (w + 1) - 1 <= Q else w
    return CodeLayout(h, w)


def directional_rate(length: int, p_axis: float, fit: ScalingParams = ROTATED_PARAMS) -> float:
    """``A (p_axis / p_th)^ceil(length / 2)`` for chains crossing ``length`` rows."""
    if not 0 <= p_axis < 1:
        raise ValueError(f"p_axis must lie in [0, 1), got {p_axis}")
    if p_axis == 0:
        return 0.0
    return fit.A * math.exp(min_errors(length) * (math.log(p_axis) - math.log(fit.p_th)))


def _evaluate(h: int, w: int, p_x: float, p_z: float, fit: ScalingParams) -> Evaluated:
    return Evaluated(CodeLayout(h, w), directional_rate(h, p_x, fit), directional_rate(w, p_z, fit))


def _best(visited: list[Evaluated]) -> Evaluated:
    return min(visited, key=lambda e: (e.L_total, e.layout.h, e.layout.w))


def _search(Q: int, p_x: float, p_z: float, fit: ScalingParams) -> list[Evaluated]:
    # assumes p_x >= p_z, so the X direction gets the extra height
    w = math.isqrt((Q + 1) // 2)
    h = w
    visited = [_evaluate(h, w, p_x, p_z, fit)]
    for _ in range(Q):
        if visited[-1].L_x <= visited[-1].L_z:
            break
        h += 1
        while w >= 2 and 2 * h * w - 1 > Q:
            w -= 1
        if w < 2:
            break
        visited.append(_evaluate(h, w, p_x, p_z, fit))
    return visited


def optimize_rectangular(
    Q: int,
    p_x: float,
    p_z: float,
    fit: ScalingParams = ROTATED_PARAMS,
) -> DesignResult:
    """Grow the height from the square patch until X and Z rates cross.

    Starting from ``h = w = floor(sqrt((Q + 1) / 2))``, ``h`` is raised by one
    per step with ``w`` cut back just enough to stay within budget, until
    ``L_x <= L_z``. The visited layout with the smallest combined rate wins
    (ties: smaller ``h``, then smaller ``w``). When ``p_x < p_z`` the roles
    are swapped and the result transposed.
    """
    if Q < 7:
        raise ValueError(f"budget Q must be >= 7 (smallest 2x2 patch), got {Q}")
    for name, val in (("p_x", p_x), ("p_z", p_z)):
        if not 0 < val < fit.p_th:
            raise ValueError(f"{name} must lie in (0, p_th={fit.p_th:g}), got {val}")
    swapped = p_x < p_z
    if swapped:
        p_x, p_z = p_z, p_x
    visited = _search(Q, p_x, p_z, fit)
    best = _best(visited)
    if swapped:
        visited = [Evaluated(e.layout.transpose(), e.L_z, e.L_x) for e in visited]
        best = Evaluated(best.layout.transpose(), best.L_z, best.L_x)
    return DesignResult(best.layout, best.L_x, best.L_z, best.L_total, visited)


def exhaustive_optimum(
    Q: int,
    p_x: float,
    p_z: float,
    fit: ScalingParams = ROTATED_PARAMS,
) -> Evaluated:
    """Best feasible ``(h, w)`` over the whole budget; a reference for the search."""
    best = None
    for h in range(2, (Q + 1) // 4 + 1):
        w = (Q + 1) // (2 * h)
        if w < 2:
            break
        # for fixed h the widest feasible w is optimal: both rates are nonincreasing in size
        cand = _evaluate(h, w, p_x, p_z, fit)
        if best is None or (cand.L_total, h, w) < (best.L_total, best.layout.h, best.layout.w):
            best = cand
    if best is None:
        raise ValueError(f"budget Q={Q} admits no layout with h, w >= 2")
    return best


@dataclass(frozen=True)
class VariantRecommendation:
    variant: str
    log10_lhs: float
    log10_rhs: float
    p_tr: float
    p_tur: float


def recommend_variant(
    p: float,
    d_e: int,
    p_tr: float = ROTATED_PARAMS.p_th,
    p_tur: float = UNROTATED_PARAMS.p_th,
) -> VariantRecommendation:
    """Rotated is preferred per qubit when ``p^((sqrt2-1) d_e) <= 7.75 p_tr^(sqrt2 d_e) / p_tur^d_e``."""
    lhs, rhs = crossover_sides(p, d_e, p_tr, p_tur)
    ln10 = math.log(10.0)
    variant = "rotated" if lhs <= rhs else "unrotated"
    return VariantRecommendation(variant, lhs / ln10, rhs / ln10, p_tr, p_tur)
