"""Continuous-time quantum walk on a phase-directed line.

The line's hopping terms carry a common unit-modulus phase e^{i*alpha}.
This package provides the closed-form Bessel propagator and an independent
spectral propagator for that walk, position distributions and survival
probability with power-law decay fitting, moment observables, and the
phase values that switch the survival decay between its normal (~ 1/t) and
enhanced (~ 1/t^3) regimes.
"""

from .bessel import (
    DEFAULT_TOLERANCES,
    BesselRow,
    Tolerances,
    bessel_j,
    bessel_j_orders,
    bessel_j_tilde,
    bessel_row,
)
from .lattice import (
    DEFAULT_BUFFER,
    EigenSystem,
    HamiltonianMatrix,
    PhasedLine,
    build_hamiltonian,
    closed_form_eigensystem,
    window_for,
)
from .observables import (
    DecayFit,
    Distribution,
    SurvivalSeries,
    TwoPointState,
    distribution_of,
    fit_decay,
    mean_position,
    second_moment,
    std_deviation,
    survival_probability,
    survival_series,
    two_point_probability,
)
from .phase_control import (
    ENHANCED,
    INTERMEDIATE,
    NORMAL,
    DecayRegime,
    classify,
    enhanced_alpha,
    interference_factor,
    normal_alpha,
)
from .propagate import (
    InitialState,
    StateVector,
    cross_validate,
    evolve_analytic,
    evolve_spectral,
)
from .validation import ValidationReport, run_validation

__version__ = "0.1.0"

__all__ = [
    "BesselRow",
    "DecayFit",
    "DecayRegime",
    "DEFAULT_BUFFER",
    "DEFAULT_TOLERANCES",
    "Distribution",
    "EigenSystem",
    "ENHANCED",
    "HamiltonianMatrix",
    "InitialState",
    "INTERMEDIATE",
    "NORMAL",
    "PhasedLine",
    "StateVector",
    "SurvivalSeries",
    "Tolerances",
    "TwoPointState",
    "ValidationReport",
    "bessel_j",
    "bessel_j_orders",
    "bessel_j_tilde",
    "bessel_row",
    "build_hamiltonian",
    "classify",
    "closed_form_eigensystem",
    "cross_validate",
    "distribution_of",
    "enhanced_alpha",
    "evolve_analytic",
    "evolve_spectral",
    "fit_decay",
    "interference_factor",
    "mean_position",
    "normal_alpha",
    "run_validation",
    "second_moment",
    "std_deviation",
    "survival_probability",
    "survival_series",
    "two_point_probability",
    "window_for",
]
