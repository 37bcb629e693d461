"""Charge, spin and current densities of a two-component (Pauli) electron field.

Pauli matrices are in the standard basis with sigma_z = diag(1, -1).
Spinor arrays carry their two components on the last axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .physconst import CONSTANTS, PhysicalConstants

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


def spinor(c_up: complex, c_down: complex) -> np.ndarray:
    return np.array([c_up, c_down], dtype=complex)


def _as_spinors(chi) -> np.ndarray:
    chi = np.asarray(chi, dtype=complex)
    if chi.shape[-1:] != (2,):
        raise ConfigError(f"spinor arrays need a trailing axis of length 2, got shape {chi.shape}")
    return chi


def spin_bilinear(chi) -> np.ndarray:
    """chi^dagger sigma chi, component-wise, shape (..., 3)."""
    chi = _as_spinors(chi)
    up, dn = chi[..., 0], chi[..., 1]
    cross = np.conj(up) * dn
    return np.stack(
        [2.0 * cross.real, 2.0 * cross.imag, np.abs(up) ** 2 - np.abs(dn) ** 2],
        axis=-1,
    )


@dataclass(frozen=True)
class SpinDensities:
    rho: np.ndarray | float
    s_vec: np.ndarray
    S_vec: np.ndarray
    m_vec: np.ndarray


def pointwise_densities(chi, constants: PhysicalConstants = CONSTANTS) -> SpinDensities:
    """Charge density, spin density s, unit-norm spin S and magnetic moment density m.

    Accepts one spinor of shape (2,) or a batch of shape (..., 2).
    """
    chi = _as_spinors(chi)
    norm2 = np.sum(np.abs(chi) ** 2, axis=-1)
    if np.any(norm2 == 0):
        raise DomainError("spinor densities are undefined for a zero spinor")
    s = 0.5 * constants.hbar * spin_bilinear(chi)
    rho = -constants.e_charge * norm2
    return SpinDensities(
        rho=float(rho) if np.ndim(rho) == 0 else rho,
        s_vec=s,
        S_vec=s / norm2[..., None],
        m_vec=constants.gamma_e * s,
    )


@dataclass(frozen=True)
class SpinPortion:
    dq: float
    dL_s: np.ndarray
    dmu: np.ndarray


def portion_spin(chi, dV: float, constants: PhysicalConstants = CONSTANTS) -> SpinPortion:
    """Charge, intrinsic angular momentum and magnetic moment in a volume element dV."""
    if dV < 0:
        raise DomainError(f"dV must be non-negative, got {dV!r}")
    d = pointwise_densities(chi, constants)
    return SpinPortion(dq=d.rho * dV, dL_s=d.s_vec * dV, dmu=d.m_vec * dV)


@dataclass(frozen=True)
class SpinorGrid:
    """Spinor samples on a uniform grid.

    ``samples`` has shape (nx, ny, nz, 2); axes of length 1 are treated as
    non-varying (zero derivative). ``vector_potential`` has shape
    (nx, ny, nz, 3) when given.
    """

    samples: np.ndarray
    spacing: tuple[float, float, float] = (1.0, 1.0, 1.0)
    vector_potential: np.ndarray | None = None

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=complex)
        if samples.ndim != 4 or samples.shape[-1] != 2:
            raise ConfigError(f"samples must have shape (nx, ny, nz, 2), got {samples.shape}")
        object.__setattr__(self, "samples", samples)
        spacing = tuple(float(h) for h in self.spacing)
        if len(spacing) != 3 or any(not h > 0 for h in spacing):
            raise ConfigError(f"spacing must be three positive numbers, got {self.spacing!r}")
        object.__setattr__(self, "spacing", spacing)
        if self.vector_potential is not None:
            a = np.asarray(self.vector_potential, dtype=float)
            if a.shape != samples.shape[:3] + (3,):
                raise ConfigError("vector_potential must have shape (nx, ny, nz, 3)")
            object.__setattr__(self, "vector_potential", a)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.samples.shape[:3]


def _derivative(f: np.ndarray, axis: int, h: float, periodic: bool) -> np.ndarray:
    n = f.shape[axis]
    if n == 1:
        return np.zeros_like(f)
    if n < 3:
        raise ConfigError(f"axis {axis} has {n} samples; need >= 3 to differentiate")
    if periodic:
        return (np.roll(f, -1, axis=axis) - np.roll(f, 1, axis=axis)) / (2.0 * h)
    return np.gradient(f, h, axis=axis, edge_order=2)


def _curl(v: np.ndarray, spacing, periodic: bool) -> np.ndarray:
    d = lambda comp, axis: _derivative(v[..., comp], axis, spacing[axis], periodic)  # noqa: E731
    return np.stack(
        [d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)],
        axis=-1,
    )


@dataclass(frozen=True)
class GridCurrents:
    j_total: np.ndarray
    j_convective: np.ndarray
    j_spin: np.ndarray


def current_on_grid(
    grid: SpinorGrid,
    constants: PhysicalConstants = CONSTANTS,
    *,
    periodic: bool = True,
) -> GridCurrents:
    """Convective and spin (c * curl m) parts of the electric current density.

    Derivatives are second-order central differences, wrapped periodically
    unless ``periodic=False`` (then one-sided at the edges).
    """
    psi = grid.samples
    if all(n == 1 for n in grid.shape):
        raise ConfigError("grid has no axis to differentiate")
    for axis, n in enumerate(grid.shape):
        if n == 2:
            raise ConfigError(f"axis {axis} has 2 samples; need 1 or >= 3")
    e, hbar, m_e, c = constants.e_charge, constants.hbar, constants.m_e, constants.c
    grad = np.stack(
        [_derivative(psi, axis, grid.spacing[axis], periodic) for axis in range(3)],
        axis=-2,
    )  # (..., 3, 2)
    im_term = np.imag(np.sum(np.conj(psi)[..., None, :] * grad, axis=-1))
    j_conv = -(e * hbar / m_e) * im_term
    if grid.vector_potential is not None:
        norm2 = np.sum(np.abs(psi) ** 2, axis=-1)
        j_conv = j_conv - (e * e / (m_e * c)) * grid.vector_potential * norm2[..., None]
    m = constants.gamma_e * 0.5 * hbar * spin_bilinear(psi)
    j_spin = c * _curl(m, grid.spacing, periodic)
    return GridCurrents(j_total=j_conv + j_spin, j_convective=j_conv, j_spin=j_spin)
