"""Detection of continuous waves by discrete atoms, matter-wave portions,
Pauli spin densities, Compton kinematics and wave-packet widths."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    BelowThresholdError,
    ConfigError,
    DomainError,
    FitError,
    KinematicsError,
    ResolutionError,
    WaveQuantaError,
)
from .physconst import CONSTANTS, PhysicalConstants  # noqa: F401
