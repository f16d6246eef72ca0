"""Independent reference implementations used only by the tests.

The Bessel oracle integrates the cosine integral definition

    J_n(x) = (1/pi) * integral_0^pi cos(n*tau - x*sin(tau)) d tau

with adaptive quadrature on panels sized to the integrand's oscillation.
It shares no code path with the recurrence engine under test.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad


def bessel_j_quadrature(n: int, x: float) -> float:
    n = int(n)
    x = float(x)
    sign = 1.0
    if n < 0:
        n = -n
        if n & 1:
            sign = -sign
    if x < 0.0:
        x = -x
        if n & 1:
            sign = -sign
    # phase swings by at most (n + x) * pi; keep a few cycles per panel
    panels = max(1, int(n + math.ceil(x)) // 4)
    edges = np.linspace(0.0, math.pi, panels + 1)
    total = 0.0
    with warnings.catch_warnings():
        # the tolerance is deliberately at the roundoff floor
        warnings.simplefilter("ignore", IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            piece, _ = quad(lambda tau: math.cos(n * tau - x * math.sin(tau)), a, b,
                            epsabs=1e-15, epsrel=1e-14, limit=200)
            total += piece
    return sign * total / math.pi


def bessel_j_prime_central(n: int, x: float, bessel_j, step: float = 1e-5) -> float:
    """Central finite-difference derivative of the implementation under test."""
    return (bessel_j(n, x + step) - bessel_j(n, x - step)) / (2.0 * step)
