"""Direction-phase selection and classification for survival decay.

The cross term of the two-source probability carries the interference
factor (-1)^k * cos(2*alpha*k + gamma). At +1 the two kernels add and the
survival probability falls off enhanced (~ t^-3); at -1 they subtract and
the decay is the normal ~ t^-1; anywhere in between the normal rate
eventually dominates.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

__all__ = [
    "ENHANCED",
    "NORMAL",
    "INTERMEDIATE",
    "LABEL_TOLERANCE",
    "DecayRegime",
    "interference_factor",
    "classify",
    "enhanced_alpha",
    "normal_alpha",
]

ENHANCED = "enhanced"
NORMAL = "normal"
INTERMEDIATE = "intermediate"

LABEL_TOLERANCE = 1e-12


def _checked_k(k: int) -> int:
    k = operator.index(k)
    if k < 1:
        raise ValueError("half-separation k must be a positive integer")
    return k


def interference_factor(alpha: float, k: int, gamma: float = 0.0) -> float:
    """(-1)^k * cos(2*alpha*k + gamma), in [-1, 1]."""
    k = _checked_k(k)
    sign = -1.0 if k & 1 else 1.0
    return sign * math.cos(2.0 * alpha * k + gamma)


@dataclass(frozen=True)
class DecayRegime:
    label: str
    interference: float


def classify(alpha: float, k: int, gamma: float = 0.0) -> DecayRegime:
    """Label `alpha` by the interference factor it produces."""
    value = interference_factor(alpha, k, gamma)
    if abs(value - 1.0) <= LABEL_TOLERANCE:
        label = ENHANCED
    elif abs(value + 1.0) <= LABEL_TOLERANCE:
        label = NORMAL
    else:
        label = INTERMEDIATE
    return DecayRegime(label=label, interference=value)


def enhanced_alpha(k: int, gamma: float = 0.0, v: int = 0, reduced: bool = True) -> float:
    """Phase driving the interference factor to +1 (enhanced decay).

    Solutions repeat with period pi/k; branch v selects one, and by default
    the result is folded into the principal interval [0, pi/k). Pass
    reduced=False for the raw branch value.
    """
    k = _checked_k(k)
    v = operator.index(v)
    if k & 1:
        raw = (math.pi + 2.0 * math.pi * v - gamma) / (2.0 * k)
    else:
        raw = (2.0 * math.pi * v - gamma) / (2.0 * k)
    return raw % (math.pi / k) if reduced else raw


def normal_alpha(k: int, gamma: float = 0.0, v: int = 0, reduced: bool = True) -> float:
    """Phase driving the interference factor to -1 (normal decay)."""
    k = _checked_k(k)
    v = operator.index(v)
    if k & 1:
        raw = (2.0 * math.pi * v - gamma) / (2.0 * k)
    else:
        raw = (math.pi + 2.0 * math.pi * v - gamma) / (2.0 * k)
    return raw % (math.pi / k) if reduced else raw
