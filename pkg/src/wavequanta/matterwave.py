"""Free Klein-Gordon plane waves and the charge, energy and momentum of
finite "portions" of them.

All electromagnetic potentials are zero here. A portion of volume V of a
plane wave with amplitude u carries the dimensionless weight
``Z = V (omega/omega_e) |u|^2``; for Z = 1 it holds charge -e, energy
hbar*omega, momentum hbar*k and rest mass hbar*omega_e/c^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .physconst import CONSTANTS, PhysicalConstants


def dispersion(k_vec, omega_e: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """omega = sqrt(omega_e^2 + c^2 |k|^2)."""
    if not omega_e > 0:
        raise DomainError(f"omega_e must be positive, got {omega_e!r}")
    ck = constants.c * np.linalg.norm(np.asarray(k_vec, dtype=float))
    return float(np.hypot(omega_e, ck))


def long_wave_dispersion(k_vec, omega_e: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Schrodinger-limit frequency omega_e + c^2 |k|^2 / (2 omega_e)."""
    if not omega_e > 0:
        raise DomainError(f"omega_e must be positive, got {omega_e!r}")
    ck = constants.c * np.linalg.norm(np.asarray(k_vec, dtype=float))
    return omega_e + ck * ck / (2.0 * omega_e)


def long_wave_gap(k_vec, omega_e: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Relative difference (approx - exact) / exact between the two dispersion laws."""
    ck = constants.c * np.linalg.norm(np.asarray(k_vec, dtype=float))
    x = ck / omega_e
    exact = np.hypot(1.0, x)
    # 1 + x^2/2 - sqrt(1 + x^2) written without cancellation
    diff = (x * x / 2.0) ** 2 / (1.0 + x * x / 2.0 + exact)
    return float(diff / exact)


def group_velocity(k_vec, omega_e: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """|d omega / d k| = c^2 |k| / omega."""
    k = np.linalg.norm(np.asarray(k_vec, dtype=float))
    return constants.c**2 * k / dispersion(k_vec, omega_e, constants)


@dataclass(frozen=True)
class PlaneWaveState:
    u_amp: complex
    k_vec: np.ndarray
    omega_e: float = CONSTANTS.omega_e
    constants: PhysicalConstants = CONSTANTS

    def __post_init__(self) -> None:
        k = np.asarray(self.k_vec, dtype=float).reshape(3)
        object.__setattr__(self, "k_vec", k)
        if not self.omega_e > 0:
            raise DomainError(f"omega_e must be positive, got {self.omega_e!r}")

    @property
    def omega(self) -> float:
        return dispersion(self.k_vec, self.omega_e, self.constants)

    @property
    def intensity(self) -> float:
        return abs(self.u_amp) ** 2


@dataclass(frozen=True)
class PlaneWaveDensities:
    rho: float
    j_vec: np.ndarray
    W: float
    P_vec: np.ndarray


def plane_wave_densities(state: PlaneWaveState) -> PlaneWaveDensities:
    cst = state.constants
    omega, we, u2 = state.omega, state.omega_e, state.intensity
    ratio = omega / we
    return PlaneWaveDensities(
        rho=-cst.e_charge * ratio * u2,
        j_vec=-(cst.e_charge * cst.c**2 / we) * state.k_vec * u2,
        W=cst.hbar * omega * ratio * u2,
        P_vec=cst.hbar * state.k_vec * ratio * u2,
    )


@dataclass(frozen=True)
class WavePortion:
    Z: float
    q: float
    E: float
    p_vec: np.ndarray
    M0: float

    def mass_shell_residual(self, constants: PhysicalConstants = CONSTANTS) -> float:
        """|E^2 - c^2 p^2 - M0^2 c^4| relative to E^2 (zero for an empty portion)."""
        c = constants.c
        e2 = self.E**2
        if e2 == 0:
            return 0.0
        return abs(e2 - c**2 * float(self.p_vec @ self.p_vec) - (self.M0 * c**2) ** 2) / e2


def portion(state: PlaneWaveState, volume: float) -> WavePortion:
    """Integrate charge, energy and momentum densities over ``volume``."""
    if volume < 0:
        raise DomainError(f"volume must be non-negative, got {volume!r}")
    cst = state.constants
    omega = state.omega
    z = volume * (omega / state.omega_e) * state.intensity
    return WavePortion(
        Z=z,
        q=-cst.e_charge * z,
        E=cst.hbar * omega * z,
        p_vec=cst.hbar * state.k_vec * z,
        M0=cst.hbar * state.omega_e * z / cst.c**2,
    )


def unit_portion_volume(state: PlaneWaveState) -> float:
    """Volume whose portion has Z = 1."""
    return state.omega_e / (state.omega * state.intensity)
