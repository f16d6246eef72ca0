"""Integer-order Bessel functions of the first kind.

The walk's amplitude kernel needs whole rows J_0(x)..J_N(x) at a fixed
argument, accurate to near machine precision for orders well past the
turning point n ~ |x| where the values decay super-exponentially. Rows are
generated by a downward (Miller-type) three-term recurrence seeded beyond
the turning point and normalized through the squared-sum identity

    J_0(x)^2 + 2 * sum_{m>=1} J_m(x)^2 = 1,

which is stable in exactly the regime where the upward recurrence blows up.
Negative orders and arguments are resolved by the reflection rule
J_{-n}(x) = (-1)^n J_n(x), applied by delegation so the symmetry is exact.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "BesselRow",
    "bessel_j",
    "bessel_row",
    "bessel_j_tilde",
    "bessel_j_orders",
]

# Powers of i indexed by n mod 4; exact unit multipliers.
_I_POWERS = (1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j)

# Downward-recurrence bookkeeping. The rescale factor is a power of two, so
# applying it is exact; the limit leaves enough headroom to square any stored
# value while accumulating the normalization sum.
_RESCALE_LIMIT = 1e140
_RESCALE_FACTOR = 2.0**-466

# Below this argument the ascending series is converged at the second
# correction term and the recurrence ratio 2n/x would get needlessly large.
_SERIES_CUTOFF = 1e-8

# Rows are cached with their top order rounded up to a bucket so sweeps over
# nearby orders at the same argument share one cache entry.
_ROW_BUCKET = 64
_CACHE_SIZE = 4096


@dataclass(frozen=True)
class Tolerances:
    """Accuracy contract of the kernel, shared by tests and validation.

    relative: target relative error away from zeros of J_n
    near_zero_abs: absolute fallback near zeros of J_n
    row_consistency: row entries versus pointwise evaluation
    recurrence_residual: three-term recurrence defect for x >= 0.5
    normalization_defect: defect of the squared-sum identity
    turning_point_margin: orders carried past |x| before the seed offset
    """

    relative: float = 1e-12
    near_zero_abs: float = 1e-14
    row_consistency: float = 1e-13
    recurrence_residual: float = 1e-10
    normalization_defect: float = 1e-10
    turning_point_margin: int = 40


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class BesselRow:
    """Values J_n(argument) for n = 0..max_order."""

    argument: float
    max_order: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if len(self.values) != self.max_order + 1:
            raise ValueError("row length does not match max_order")


def _checked_argument(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"Bessel argument must be finite, got {x!r}")
    return x


def _series_row(top: int, x: float) -> np.ndarray:
    # Ascending series with two correction terms; only used for tiny |x|,
    # where it is exact to double precision. At x = 0 it reduces to the
    # Kronecker delta without touching the (singular) recurrence.
    out = np.zeros(top + 1)
    q = 0.25 * x * x
    lead = 1.0
    for n in range(top + 1):
        if n:
            lead *= 0.5 * x / n
            if lead == 0.0:
                break
        out[n] = lead * (1.0 - q / (n + 1) + q * q / (2.0 * (n + 1) * (n + 2)))
    return out


def _miller_row(top: int, x: float, margin: int) -> np.ndarray:
    # x > 0. Orders are carried to the turning point plus a margin so the
    # normalization sum captures essentially all of its weight; the seed is
    # then pushed further out so its arbitrariness is washed out by the time
    # the recurrence reaches any order a caller can see.
    m_eff = max(top, int(math.ceil(x)) + margin)
    start = m_eff + int(math.ceil(10.0 + 2.0 * math.sqrt(m_eff)))
    f = [0.0] * (start + 2)
    f[start] = 1.0
    for n in range(start, 0, -1):
        v = (2.0 * n / x) * f[n] - f[n + 1]
        if abs(v) > _RESCALE_LIMIT:
            for m in range(n, start + 2):
                f[m] *= _RESCALE_FACTOR
            v *= _RESCALE_FACTOR
        f[n - 1] = v
    row = np.asarray(f)
    row /= math.sqrt(row[0] ** 2 + 2.0 * float(np.dot(row[1:], row[1:])))
    return np.array(row[: top + 1])


@lru_cache(maxsize=_CACHE_SIZE)
def _nonneg_row(top: int, x: float) -> np.ndarray:
    # x >= 0 and finite; cached read-only so callers must copy before writing.
    if x <= _SERIES_CUTOFF:
        row = _series_row(top, x)
    else:
        row = _miller_row(top, x, DEFAULT_TOLERANCES.turning_point_margin)
    row.flags.writeable = False
    return row


def _row_top(order: int) -> int:
    return _ROW_BUCKET * (order // _ROW_BUCKET + 1)


def bessel_j(n: int, x: float) -> float:
    """J_n(x) for any integer order n and finite real x."""
    n = operator.index(n)
    if n < 0:
        value = bessel_j(-n, x)
        return -value if n & 1 else value
    x = _checked_argument(x)
    if x < 0.0:
        value = bessel_j(n, -x)
        return -value if n & 1 else value
    return float(_nonneg_row(_row_top(n), x)[n])


def bessel_row(max_order: int, x: float) -> BesselRow:
    """Row of values J_0(x)..J_max_order(x)."""
    max_order = operator.index(max_order)
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    x = _checked_argument(x)
    values = _nonneg_row(_row_top(max_order), abs(x))[: max_order + 1].copy()
    if x < 0.0:
        values[1::2] *= -1.0
    return BesselRow(argument=x, max_order=max_order, values=values)


def bessel_j_tilde(n: int, x: float) -> complex:
    """The phase-twisted value i**n * J_n(x)."""
    n = operator.index(n)
    return _I_POWERS[n % 4] * bessel_j(n, x)


def bessel_j_orders(orders, x: float) -> np.ndarray:
    """J_order(x) for an integer array of orders of either sign."""
    orders = np.asarray(orders, dtype=np.int64)
    x = _checked_argument(x)
    mag = np.abs(orders)
    top = int(mag.max()) if orders.size else 0
    values = _nonneg_row(_row_top(top), abs(x))[mag].copy()
    odd = (mag & 1) == 1
    if x < 0.0:
        values[odd] *= -1.0
    values[(orders < 0) & odd] *= -1.0
    return values
