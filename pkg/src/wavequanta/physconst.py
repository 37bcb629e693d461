"""Physical constants and the electron mass-frequency correspondence.

Values are SI and fixed to CODATA 2014, the adjustment whose electron mass
(9.10938356e-31 kg) the natural electron-wave frequency below reproduces.
The electron mass is never stored: it is always hbar * omega_e / c**2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

CODATA_VERSION = "CODATA 2014"

HBAR = 1.054571800e-34  # J s
C_LIGHT = 299792458.0  # m/s, exact
E_CHARGE = 1.6021766208e-19  # C
OMEGA_E = 7.763440716e20  # rad/s, natural frequency of the electron wave


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR
    c: float = C_LIGHT
    e_charge: float = E_CHARGE
    omega_e: float = OMEGA_E
    version: str = CODATA_VERSION

    def __post_init__(self) -> None:
        for name in ("hbar", "c", "e_charge", "omega_e"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite, got {value!r}")

    @property
    def m_e(self) -> float:
        return self.hbar * self.omega_e / self.c**2

    @property
    def gamma_e(self) -> float:
        """Intrinsic gyromagnetic ratio -e/(m_e c) of the spin densities."""
        return -self.e_charge / (self.m_e * self.c)

    @property
    def bohr_magneton(self) -> float:
        return self.e_charge * self.hbar / (2.0 * self.m_e * self.c)

    def as_dict(self) -> dict[str, float | str]:
        return {
            "version": self.version,
            "hbar": self.hbar,
            "c": self.c,
            "e_charge": self.e_charge,
            "omega_e": self.omega_e,
            "m_e": self.m_e,
        }


CONSTANTS = PhysicalConstants()


def electron_mass_from_frequency(
    omega_e: float, constants: PhysicalConstants = CONSTANTS
) -> float:
    """Return the rest mass hbar * omega_e / c**2 carried by a wave of natural frequency omega_e."""
    if not omega_e > 0:
        raise DomainError(f"omega_e must be positive, got {omega_e!r}")
    return constants.hbar * omega_e / constants.c**2


def compton_wavelength(constants: PhysicalConstants = CONSTANTS) -> float:
    return 2.0 * math.pi * constants.hbar / (constants.m_e * constants.c)
