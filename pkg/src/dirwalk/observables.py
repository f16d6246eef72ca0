"""Distributions, survival decay, and moments of the walk.

The two-source state cos(theta)|-k> + e^{i*gamma} sin(theta)|k> has the
closed-form position probability

    P(x, t) = cos^2(theta) J_{x+k}(2t)^2 + sin^2(theta) J_{x-k}(2t)^2
            + 2 (-1)^k cos(2*alpha*k + gamma) cos(theta) sin(theta)
              * J_{x+k}(2t) J_{x-k}(2t),

which this module evaluates directly (no state propagation) for survival
sweeps, and which the propagators must reproduce pointwise.
"""

from __future__ import annotations

import cmath
import math
import operator
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j_orders
from .phase_control import interference_factor
from .propagate import InitialState, StateVector

__all__ = [
    "TwoPointState",
    "Distribution",
    "SurvivalSeries",
    "DecayFit",
    "SMOOTHING_HALF_WIDTH",
    "two_point_probability",
    "distribution_of",
    "survival_probability",
    "survival_series",
    "fit_decay",
    "mean_position",
    "second_moment",
    "std_deviation",
]

# Sliding smoothing window of total width 2 in t, applied to the log-log
# samples before the decay fit.
SMOOTHING_HALF_WIDTH = 1.0


@dataclass(frozen=True)
class TwoPointState:
    """cos(theta)|-k> + e^{i*gamma} sin(theta)|k> with half-separation k >= 1."""

    k: int
    theta: float
    gamma: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", operator.index(self.k))
        if self.k < 1:
            raise ValueError("half-separation k must be a positive integer")
        if not (math.isfinite(self.theta) and math.isfinite(self.gamma)):
            raise ValueError("theta and gamma must be finite")

    def initial_state(self) -> InitialState:
        return InitialState((
            (-self.k, complex(math.cos(self.theta))),
            (self.k, cmath.exp(1j * self.gamma) * math.sin(self.theta)),
        ))


@dataclass(frozen=True)
class Distribution:
    """Position probabilities over a window interior at one instant."""

    window: tuple[int, int]
    time: float
    probs: np.ndarray

    def __post_init__(self) -> None:
        left, right = self.window
        if len(self.probs) != right - left - 1:
            raise ValueError("probability count does not match window interior")

    def positions(self) -> np.ndarray:
        return np.arange(self.window[0] + 1, self.window[1])

    def total(self) -> float:
        return float(np.sum(self.probs))


@dataclass(frozen=True)
class SurvivalSeries:
    """Survival probability over a fixed position range, sampled in time."""

    position_range: tuple[int, int]
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")
        if len(self.times) and self.times[0] < 0:
            raise ValueError("times must be nonnegative")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    @property
    def samples(self) -> list[tuple[float, float]]:
        return [(float(t), float(p)) for t, p in zip(self.times, self.values)]


@dataclass(frozen=True)
class DecayFit:
    """Least-squares power law P ~ t^exponent over a fit window."""

    exponent: float
    intercept: float
    r_squared: float
    fit_window: tuple[float, float]
    smoothing: str


def _two_point_probs(state: TwoPointState, alpha: float, xs: np.ndarray,
                     t: float) -> np.ndarray:
    plus = bessel_j_orders(xs + state.k, 2.0 * t)
    minus = bessel_j_orders(xs - state.k, 2.0 * t)
    c, s = math.cos(state.theta), math.sin(state.theta)
    cross = 2.0 * interference_factor(alpha, state.k, state.gamma) * c * s
    p = (c * plus) ** 2 + (s * minus) ** 2 + cross * plus * minus
    # the exact value is a (sum of) squares; clip the round-off dips
    return np.maximum(p, 0.0)


def two_point_probability(state: TwoPointState, alpha: float, x: int, t: float) -> float:
    """Closed-form P(x, t) of the two-source state."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    xs = np.asarray([operator.index(x)])
    return float(_two_point_probs(state, float(alpha), xs, float(t))[0])


def distribution_of(state_vector: StateVector) -> Distribution:
    """Pointwise |psi|^2 of a propagated state."""
    return Distribution(window=state_vector.window, time=state_vector.time,
                        probs=state_vector.probabilities())


def survival_probability(dist: Distribution, k0: int, k1: int) -> float:
    """Probability mass inside positions k0..k1 (inclusive)."""
    k0, k1 = operator.index(k0), operator.index(k1)
    if k0 > k1:
        raise ValueError("range must satisfy k0 <= k1")
    left, right = dist.window
    if k0 <= left or k1 >= right:
        raise ValueError(f"range [{k0}, {k1}] not inside window interior ({left}, {right})")
    start = k0 - (left + 1)
    return float(np.sum(dist.probs[start : start + (k1 - k0 + 1)]))


def survival_series(state: TwoPointState, alpha: float, position_range,
                    times) -> SurvivalSeries:
    """One closed-form survival value per requested time."""
    k0, k1 = (operator.index(k) for k in position_range)
    if k0 > k1:
        raise ValueError("range must satisfy k0 <= k1")
    times = np.asarray(times, dtype=float)
    xs = np.arange(k0, k1 + 1)
    values = np.array([float(np.sum(_two_point_probs(state, float(alpha), xs, t)))
                       for t in times])
    return SurvivalSeries(position_range=(k0, k1), times=times, values=values)


def fit_decay(series: SurvivalSeries, t_min: float, t_max: float) -> DecayFit:
    """Power-law exponent of the survival decay over [t_min, t_max].

    The raw samples oscillate through the kernel's zeros, so the (log t,
    log P) points are smoothed with a sliding mean over t-windows of width
    2 before the least-squares line. An exact power law passes through the
    smoothing unchanged.
    """
    if not t_min < t_max:
        raise ValueError("fit window must satisfy t_min < t_max")
    t, p = series.times, series.values
    selected = (t >= t_min) & (t <= t_max)
    if int(np.sum(selected)) < 8:
        raise ValueError("need at least 8 samples inside the fit window")
    # smoothing windows reach half a width past the fit range
    used = (t >= t_min - SMOOTHING_HALF_WIDTH) & (t <= t_max + SMOOTHING_HALF_WIDTH)
    if np.any(p[used] <= 0.0):
        raise ValueError("decay fit needs positive survival values")
    t_used, log_t, log_p = t[used], np.log(t[used]), np.log(p[used])
    sx = np.empty(int(np.sum(selected)))
    sy = np.empty_like(sx)
    for i, ti in enumerate(t[selected]):
        inside = np.abs(t_used - ti) <= SMOOTHING_HALF_WIDTH
        sx[i] = log_t[inside].mean()
        sy[i] = log_p[inside].mean()
    slope, intercept = np.polyfit(sx, sy, 1)
    residual = sy - (slope * sx + intercept)
    ss_tot = float(np.sum((sy - sy.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(residual**2)) / ss_tot
    return DecayFit(
        exponent=float(slope),
        intercept=float(intercept),
        r_squared=min(max(r2, 0.0), 1.0),
        fit_window=(float(t_min), float(t_max)),
        smoothing=f"sliding log-mean, window width {2.0 * SMOOTHING_HALF_WIDTH:g} in t",
    )


def mean_position(dist: Distribution) -> float:
    """First moment sum_x x * P(x)."""
    return float(np.dot(dist.positions(), dist.probs))


def second_moment(dist: Distribution) -> float:
    """Second moment sum_x x^2 * P(x)."""
    xs = dist.positions().astype(float)
    return float(np.dot(xs * xs, dist.probs))


def std_deviation(dist: Distribution) -> float:
    """sqrt(<x^2> - <x>^2), with tiny negative round-off clamped to zero."""
    m1 = mean_position(dist)
    variance = second_moment(dist) - m1 * m1
    if variance < -1e-12:
        raise ValueError(f"variance {variance!r} is negative beyond round-off")
    return math.sqrt(max(variance, 0.0))
