"""Kinematics of light scattered by an electron wave.

For an incident wave of frequency omega0 travelling along ``k0_dir``, an
electron-wave component of momentum p0 and an observation direction n, the
scattered frequency follows in closed form from energy and momentum balance
with the Klein-Gordon dispersion E(p) = sqrt(c^2 p^2 + m_e^2 c^4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, KinematicsError
from .physconst import CONSTANTS, PhysicalConstants

_UNIT_TOL = 1e-12
_RESIDUAL_LIMIT = 1e-9


def _unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(3)
    if abs(np.linalg.norm(v) - 1.0) > _UNIT_TOL:
        raise ConfigError(f"{name} must be a unit vector (|{name}| = {np.linalg.norm(v)!r})")
    return v


@dataclass(frozen=True)
class ComptonInput:
    omega0: float
    k0_dir: np.ndarray
    p0_vec: np.ndarray
    n_dir: np.ndarray

    def __post_init__(self) -> None:
        if not self.omega0 > 0:
            raise ConfigError(f"omega0 must be positive, got {self.omega0!r}")
        object.__setattr__(self, "k0_dir", _unit(self.k0_dir, "k0_dir"))
        object.__setattr__(self, "n_dir", _unit(self.n_dir, "n_dir"))
        object.__setattr__(self, "p0_vec", np.asarray(self.p0_vec, dtype=float).reshape(3))

    @property
    def cos_theta(self) -> float:
        return float(self.k0_dir @ self.n_dir)


@dataclass(frozen=True)
class ComptonResult:
    omega: float
    p_vec: np.ndarray
    energy_residual: float
    momentum_residual: float


def electron_energy(p_vec, constants: PhysicalConstants = CONSTANTS) -> float:
    p = np.asarray(p_vec, dtype=float)
    mc2 = constants.m_e * constants.c**2
    return float(np.hypot(constants.c * np.linalg.norm(p), mc2))


def scattered_frequency(inp: ComptonInput, constants: PhysicalConstants = CONSTANTS) -> float:
    """Closed-form scattered frequency seen along ``n_dir``.

    Both numerator and denominator are positive whenever E0 > c|p0|; a
    non-positive value means the input lost that margin to rounding.
    """
    c, hbar = constants.c, constants.hbar
    e0 = electron_energy(inp.p0_vec, constants)
    k0 = (inp.omega0 / c) * inp.k0_dir
    numer = e0 * inp.omega0 - c**2 * float(k0 @ inp.p0_vec)
    denom = e0 - c * float(inp.p0_vec @ inp.n_dir) + hbar * inp.omega0 * (1.0 - inp.cos_theta)
    if not denom > 0:
        raise KinematicsError(f"non-positive denominator {denom!r}: no scattered wave in this direction")
    if not numer > 0:
        raise KinematicsError(f"non-positive numerator {numer!r}: no scattered wave in this direction")
    return numer / denom


def outgoing_momentum(
    inp: ComptonInput, omega: float, constants: PhysicalConstants = CONSTANTS
) -> ComptonResult:
    """Outgoing electron-wave momentum and the conservation defects of the solution."""
    c, hbar = constants.c, constants.hbar
    k0 = (inp.omega0 / c) * inp.k0_dir
    p = inp.p0_vec + hbar * k0 - inp.n_dir * hbar * omega / c
    e0 = electron_energy(inp.p0_vec, constants)
    e = electron_energy(p, constants)
    energy_res = abs(e + hbar * omega - e0 - hbar * inp.omega0) / (e0 + hbar * inp.omega0)
    # momentum balance p + n hbar omega / c = p0 + hbar k0, checked per component
    lhs = p + inp.n_dir * hbar * omega / c
    rhs = inp.p0_vec + hbar * k0
    scale = np.linalg.norm(inp.p0_vec) + hbar * inp.omega0 / c
    momentum_res = float(np.max(np.abs(lhs - rhs)) / scale)
    return ComptonResult(omega=omega, p_vec=p, energy_residual=energy_res, momentum_residual=momentum_res)


def solve(inp: ComptonInput, constants: PhysicalConstants = CONSTANTS) -> ComptonResult:
    """Scattered frequency and outgoing momentum, rejecting spurious roots."""
    result = outgoing_momentum(inp, scattered_frequency(inp, constants), constants)
    if result.energy_residual > _RESIDUAL_LIMIT:
        raise KinematicsError(
            f"closed form violates energy balance (residual {result.energy_residual:.3e})"
        )
    return result


def compton_shift(lambda0: float, theta: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Wavelength increase (2 pi hbar / (m_e c)) (1 - cos theta) for an electron wave at rest."""
    if not lambda0 > 0:
        raise DomainError(f"lambda0 must be positive, got {lambda0!r}")
    return 2.0 * math.pi * constants.hbar / (constants.m_e * constants.c) * (1.0 - math.cos(theta))
