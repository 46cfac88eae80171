"""Logical error probabilities built from configuration counts.

Everything is carried as a natural log and exponentiated at the end, since
``p^d_e`` underflows double precision long before the counts stop being
meaningful (``d_e`` around 160 at ``p = 1e-4``).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .analytic import RegimeWarning, unrotated_count
from .counting import leading_count
from .lattice import check_distance, min_errors

VARIANTS = ("rotated", "unrotated")
MEASUREMENT_MODES = ("exact", "leading", "stirling")

TRUNCATION_WARN = 0.1
TRUNCATION_STRICT = 1.0


class RegimeError(ValueError):
    """Refused because the truncation to the leading term is not justified."""


@dataclass(frozen=True)
class RateResult:
    value: float
    log_value: float
    truncation_interval: tuple[float, float] | None = None

    @classmethod
    def from_log(cls, log_value: float, truncation_interval=None) -> "RateResult":
        value = math.exp(log_value) if log_value > -math.inf else 0.0
        return cls(value, log_value, truncation_interval)

    @property
    def log10_value(self) -> float:
        return self.log_value / math.log(10.0)


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _check_prob(name: str, p: float, allow_zero: bool = True) -> None:
    lo_ok = p >= 0 if allow_zero else p > 0
    if not (lo_ok and p < 1):
        bound = "[0, 1)" if allow_zero else "(0, 1)"
        raise ValueError(f"{name} must lie in {bound}, got {p}")


def log_term(count: int, n_sites: int, p: float, k: int) -> float:
    """``ln(count p^k (1-p)^(n_sites-k))``; ``-inf`` when the term is zero."""
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    _check_prob("p", p)
    if not 0 <= k <= n_sites:
        raise ValueError(f"k must lie in [0, {n_sites}], got {k}")
    if count == 0 or (p == 0 and k > 0):
        return -math.inf
    # math.log is exact-input for arbitrarily large ints
    out = math.log(count) + (n_sites - k) * math.log1p(-p)
    if k:
        out += k * math.log(p)
    return out


def term_probability(count: int, d: int, p: float, k: int) -> RateResult:
    """Probability ``count p^k (1-p)^(d^2-k)`` of one order-``k`` term."""
    return RateResult.from_log(log_term(count, d * d, p, k))


def configuration_count(d: int, variant: str = "rotated", both_axes: bool = False) -> int:
    _check_variant(variant)
    if variant == "rotated":
        return leading_count(d, both_axes)
    return unrotated_count(d, both_axes)


def check_truncation(d: int, p: float, strict: bool = False) -> list[str]:
    """Regime messages for the leading-term truncation at ``(d, p)``.

    Emits a ``RegimeWarning`` for ``p d^2 > 0.1``; under ``strict`` raises
    ``RegimeError`` for ``p d^2 > 1``.
    """
    load = p * d * d
    if strict and load > TRUNCATION_STRICT:
        raise RegimeError(
            f"p*d^2 = {load:.4g} exceeds {TRUNCATION_STRICT:g}; higher-order terms may dominate "
            "(drop --strict to get the leading term with its correction interval)"
        )
    msgs = []
    if load > TRUNCATION_WARN:
        msg = f"p*d^2 = {load:.4g} > {TRUNCATION_WARN:g}: leading-term truncation is inaccurate here"
        warnings.warn(msg, RegimeWarning, stacklevel=3)
        msgs.append(msg)
    return msgs


def correction_interval(d: int, p: float) -> tuple[float, float]:
    """Bracket ``(0.5 d^2 p, d^2 p)`` on the ratio ``P_{d_e+1} / P_{d_e}``."""
    _check_prob("p", p)
    high = d * d * p
    return 0.5 * high, high


def tail_bound(k: int, d: int, p: float) -> float:
    """Upper bound ``(d^2 p)^k / k!`` on ``P_{d_e+k} / P_{d_e}``."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    _check_prob("p", p)
    x = d * d * p
    if x == 0:
        return 1.0 if k == 0 else 0.0
    return math.exp(k * math.log(x) - math.lgamma(k + 1))


def logical_rate(
    d: int,
    p: float,
    variant: str = "rotated",
    both_axes: bool = False,
    strict: bool = False,
) -> RateResult:
    """Leading-order logical error rate ``P_{d_e}`` with its correction interval."""
    check_distance(d)
    _check_variant(variant)
    _check_prob("p", p)
    check_truncation(d, p, strict)
    count = configuration_count(d, variant, both_axes)
    log_value = log_term(count, d * d, p, min_errors(d))
    return RateResult.from_log(log_value, correction_interval(d, p))


# -- measurement errors ------------------------------------------------------


@dataclass(frozen=True)
class MeasurementSpec:
    """``M`` repeated measurements per ancilla, majority-voted, on ``N_a`` ancillas."""

    p_m: float
    M: int
    N_a: int

    def __post_init__(self):
        _check_prob("p_m", self.p_m)
        if self.M < 3 or self.M % 2 == 0:
            raise ValueError(f"M must be odd and >= 3, got {self.M}")
        if self.N_a < 1:
            raise ValueError(f"N_a must be >= 1, got {self.N_a}")

    @property
    def M_e(self) -> int:
        return (self.M + 1) // 2


def ancilla_count(variant: str, d: int) -> int:
    """Syndrome qubits: ``d^2 - 1`` rotated, ``2 d (d - 1)`` unrotated."""
    _check_variant(variant)
    check_distance(d)
    return d * d - 1 if variant == "rotated" else 2 * d * (d - 1)


def _log_failure_prob(spec: MeasurementSpec) -> float:
    p, M = spec.p_m, spec.M
    if p == 0:
        return -math.inf
    terms = [
        math.log(math.comb(M, k)) + k * math.log(p) + (M - k) * math.log1p(-p)
        for k in range(spec.M_e, M + 1)
    ]
    return float(logsumexp(terms))


def measurement_failure_prob(spec: MeasurementSpec) -> float:
    """Probability ``p_M`` that one ancilla sees at least ``M_e`` wrong outcomes."""
    return math.exp(_log_failure_prob(spec))


def _log_measurement_exact(spec: MeasurementSpec) -> float:
    log_pm = _log_failure_prob(spec)
    if log_pm == -math.inf:
        return -math.inf
    p_M = math.exp(log_pm)
    if p_M > 1e-300:
        return math.log(-math.expm1(spec.N_a * math.log1p(-p_M)))
    # 1 - (1 - x)^N = N x (1 + O(N x)), and N x is far below double resolution here
    return math.log(spec.N_a) + log_pm


def measurement_logical_rate(spec: MeasurementSpec, mode: str = "exact") -> float:
    """Logical error probability from measurement errors, ``1 - (1 - p_M)^N_a``.

    ``leading`` keeps the first binomial term and the union bound,
    ``N_a binom(M, M_e) p_m^M_e``; ``stirling`` further replaces the binomial,
    giving ``N_a (4 pi M_e)^(-1/2) (4 p_m)^M_e``.
    """
    if mode not in MEASUREMENT_MODES:
        raise ValueError(f"mode must be one of {MEASUREMENT_MODES}, got {mode!r}")
    if mode == "exact":
        lv = _log_measurement_exact(spec)
        return math.exp(lv) if lv > -math.inf else 0.0
    if spec.p_m > 0.01 or spec.N_a * measurement_failure_prob(spec) > 0.1:
        warnings.warn(
            f"{mode} approximation assumes p_m <= 0.01 and N_a p_M <= 0.1 "
            f"(p_m={spec.p_m:g}, N_a p_M={spec.N_a * measurement_failure_prob(spec):.3g})",
            RegimeWarning,
            stacklevel=2,
        )
    if spec.p_m == 0:
        return 0.0
    if mode == "leading":
        return spec.N_a * math.comb(spec.M, spec.M_e) * spec.p_m**spec.M_e
    return spec.N_a * (4 * spec.M_e * math.pi) ** -0.5 * (4 * spec.p_m) ** spec.M_e


@dataclass(frozen=True)
class MeasurementComparison:
    M: int | None
    measurement_rate: float | None
    data_rate: float
    cap: int


def required_measurements(
    p: float,
    p_m: float,
    d: int,
    variant: str = "rotated",
    cap: int = 99,
    both_axes: bool = False,
) -> MeasurementComparison:
    """Smallest odd ``M >= 3`` with measurement-induced rate below the data rate.

    ``M`` is ``None`` if nothing up to ``cap`` suffices.
    """
    _check_prob("p_m", p_m)
    data = logical_rate(d, p, variant, both_axes)
    n_a = ancilla_count(variant, d)
    for M in range(3, cap + 1, 2):
        spec = MeasurementSpec(p_m, M, n_a)
        lm = _log_measurement_exact(spec)
        if lm < data.log_value:
            return MeasurementComparison(M, math.exp(lm) if lm > -math.inf else 0.0, data.value, cap)
    return MeasurementComparison(None, None, data.value, cap)


# -- noise descriptions ------------------------------------------------------


@dataclass(frozen=True)
class NoiseSpec:
    """Physical noise: one rate, separate X/Z rates, or a global mixture.

    For a mixture, every qubit shares the rate ``p_j``, chosen jointly with
    probability ``rho_j``. Components are stored sorted by decreasing rate
    with duplicate rates merged; the mean rate is ``sum rho_j p_j``.
    """

    kind: str
    p: float | None = None
    p_x: float | None = None
    p_z: float | None = None
    components: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    @classmethod
    def uniform(cls, p: float) -> "NoiseSpec":
        _check_prob("p", p)
        return cls("uniform", p=p)

    @classmethod
    def per_axis(cls, p_x: float, p_z: float) -> "NoiseSpec":
        _check_prob("p_x", p_x)
        _check_prob("p_z", p_z)
        return cls("per-axis", p_x=p_x, p_z=p_z)

    @classmethod
    def mixture(cls, components, tol: float = 1e-12) -> "NoiseSpec":
        comps = [(float(w), float(r)) for w, r in components]
        if not comps:
            raise ValueError("a mixture needs at least one component")
        for w, r in comps:
            if not 0 <= w <= 1:
                raise ValueError(f"mixture weight must lie in [0, 1], got {w}")
            _check_prob("mixture rate", r)
        total = math.fsum(w for w, _ in comps)
        if abs(total - 1.0) > tol:
            raise ValueError(f"mixture weights sum to {total!r}, not 1 within {tol:g}")
        merged: dict[float, float] = {}
        for w, r in comps:
            merged[r] = merged.get(r, 0.0) + w / total
        ordered = tuple((merged[r], r) for r in sorted(merged, reverse=True))
        return cls("mixture", components=ordered)

    @property
    def mean_rate(self) -> float:
        if self.kind == "mixture":
            return math.fsum(w * r for w, r in self.components)
        if self.kind == "uniform":
            return self.p
        raise ValueError("mean_rate is defined for uniform and mixture noise only")


@dataclass(frozen=True)
class MixtureResult:
    rate: RateResult
    dominant_index: int  # 1-based, in decreasing-rate order
    dominant_share: float
    shares: tuple[float, ...]


def mixture_rate(
    d: int,
    noise: NoiseSpec,
    variant: str = "rotated",
    both_axes: bool = False,
) -> MixtureResult:
    """Leading-order rate ``C_{d_e} sum_j rho_j p_j^d_e (1 - p_j)^(d^2 - d_e)``."""
    if noise.kind != "mixture":
        raise ValueError(f"mixture_rate needs mixture noise, got {noise.kind!r}")
    check_distance(d)
    k = min_errors(d)
    count = configuration_count(d, variant, both_axes)
    logs = np.array([
        (math.log(w) if w > 0 else -math.inf) + log_term(count, d * d, r, k)
        for w, r in noise.components
    ])
    total = float(logsumexp(logs))
    if total == -math.inf:
        shares = tuple(0.0 for _ in logs)
    else:
        shares = tuple(float(s) for s in np.exp(logs - total))
    # the dominant component is chosen on rho_j p_j^d_e alone
    lead = [
        (math.log(w) + k * math.log(r)) if w > 0 and r > 0 else -math.inf
        for w, r in noise.components
    ]
    j = int(np.argmax(lead))
    return MixtureResult(RateResult.from_log(total, correction_interval(d, noise.components[0][1])),
                         j + 1, shares[j], shares)
