"""Excitation rates and probabilities for atoms driven by a continuous wave.

Time is measured by the dimensionless exposure tau = b * I0 * t (or
b * |psi0|^2 * t for matter waves), so an atom sitting where the relative
intensity is relI gets excited at rate relI per unit tau.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BelowThresholdError, DomainError

ArrayLike = float | np.ndarray

_BORN_SERIES_CUTOFF = 1e-6
XSEC_THRESHOLD_V2 = 0.50


def _check_rel(rel: np.ndarray) -> None:
    if np.any(rel < 0) or np.any(rel > 1) or np.any(np.isnan(rel)):
        raise DomainError("relative intensity must lie in [0, 1]")


def _check_tau(tau: np.ndarray) -> None:
    if np.any(tau < 0) or np.any(np.isnan(tau)):
        raise DomainError("exposure tau must be non-negative")


def _out(x: np.ndarray) -> ArrayLike:
    return float(x) if x.ndim == 0 else x


def excitation_rate(b: ArrayLike, intensity: ArrayLike) -> ArrayLike:
    b = np.asarray(b, dtype=float)
    intensity = np.asarray(intensity, dtype=float)
    if np.any(b < 0) or np.any(intensity < 0):
        raise DomainError("rate coefficient and intensity must be non-negative")
    return _out(b * intensity)


def survival_probability(w: ArrayLike, t: ArrayLike) -> ArrayLike:
    """Probability exp(-w t) that an atom stays unexcited at constant rate w."""
    w = np.asarray(w, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(w < 0) or np.any(t < 0):
        raise DomainError("rate and time must be non-negative")
    return _out(np.exp(-w * t))


def integrated_rate(times, rates) -> float:
    """Trapezoidal integral of a sampled rate schedule w(t)."""
    times = np.asarray(times, dtype=float)
    rates = np.asarray(rates, dtype=float)
    if times.shape != rates.shape or times.ndim != 1 or times.size < 1:
        raise DomainError("times and rates must be equal-length 1-D sequences")
    if np.any(np.diff(times) < 0):
        raise DomainError("times must be nondecreasing")
    if np.any(rates < 0):
        raise DomainError("rates must be non-negative")
    return float(np.sum(0.5 * (rates[1:] + rates[:-1]) * np.diff(times)))


def survival_from_schedule(times, rates) -> float:
    return math.exp(-integrated_rate(times, rates))


def cumulative_excitation_probability(rel: ArrayLike, tau: ArrayLike) -> ArrayLike:
    """P+ = 1 - exp(-relI * tau)."""
    rel = np.asarray(rel, dtype=float)
    tau = np.asarray(tau, dtype=float)
    _check_rel(rel)
    _check_tau(tau)
    return _out(-np.expm1(-rel * tau))


def detection_ratio(rel: ArrayLike, tau: ArrayLike) -> ArrayLike:
    """Detection probability relative to the intensity maximum.

    (1 - exp(-relI tau)) / (1 - exp(-tau)); reduces to relI as tau -> 0.
    """
    rel = np.asarray(rel, dtype=float)
    tau = np.asarray(tau, dtype=float)
    _check_rel(rel)
    _check_tau(tau)
    small = tau < _BORN_SERIES_CUTOFF
    t_safe = np.where(small, 1.0, tau)
    exact = np.expm1(-rel * t_safe) / np.expm1(-t_safe)
    series = rel * (
        1.0
        - 0.5 * (rel - 1.0) * tau
        + (2.0 * rel * rel - 3.0 * rel + 1.0) * tau * tau / 12.0
    )
    return _out(np.where(small, series, exact))


def hydrogen_excitation_cross_section(v: ArrayLike) -> ArrayLike:
    """1s -> 2s/2p excitation cross-section of hydrogen in atomic units.

    sigma = (4 pi / v^2) * 0.555 * ln(v^2 / 0.50); defined above v^2 = 0.50.
    """
    v2 = np.asarray(v, dtype=float) ** 2
    if np.any(v2 <= XSEC_THRESHOLD_V2):
        raise BelowThresholdError(
            f"v^2 must exceed {XSEC_THRESHOLD_V2} (got min {float(np.min(v2)):.6g})"
        )
    return _out(4.0 * np.pi / v2 * 0.555 * np.log(v2 / XSEC_THRESHOLD_V2))


def rate_coefficient(sigma: float, v: float, n0: float) -> float:
    """b = sigma * v / N0 for a detector of N0 atoms."""
    if sigma < 0:
        raise DomainError(f"sigma must be non-negative, got {sigma!r}")
    if not v > 0:
        raise DomainError(f"v must be positive, got {v!r}")
    if not n0 >= 1:
        raise DomainError(f"N0 must be at least 1, got {n0!r}")
    return sigma * v / n0
