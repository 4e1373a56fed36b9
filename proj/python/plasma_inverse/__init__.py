"""Recover a compactly supported potential from two-point boundary data."""

from ._core import (
    AccuracyError,
    ConfigError,
    HypothesisError,
    PlasmaError,
    SolverError,
    diagnose,
    forward,
    invert,
    kgrid,
    recover_spectrum,
    relative_l2_error,
    sample_potential,
)

__all__ = [
    "AccuracyError",
    "ConfigError",
    "HypothesisError",
    "PlasmaError",
    "SolverError",
    "diagnose",
    "forward",
    "invert",
    "kgrid",
    "recover_spectrum",
    "relative_l2_error",
    "sample_potential",
]
