"""Exception types shared across the package."""


class WaveQuantaError(Exception):
    """Base class for all package errors."""


class ConfigError(WaveQuantaError, ValueError):
    """Invalid configuration or construction parameters."""


class DomainError(WaveQuantaError, ValueError):
    """An argument falls outside the mathematical domain of an operation."""


class BelowThresholdError(DomainError):
    """Cross-section requested at or below the excitation threshold."""


class KinematicsError(DomainError):
    """Scattering kinematics admit no physical solution for the given input."""


class ResolutionError(ConfigError):
    """A sampled signal is too coarse for its spectral moments to be meaningful."""


class FitError(DomainError):
    """A goodness-of-fit statistic is undefined for the given data."""
