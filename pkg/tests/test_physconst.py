import math

import pytest
from hypothesis import given, strategies as st

from wavequanta import CONSTANTS, DomainError, PhysicalConstants
from wavequanta.physconst import compton_wavelength, electron_mass_from_frequency

# CODATA 2014 electron mass; hbar*omega_e/c^2 evaluated at 40 digits gives 9.1093835604622e-31
M_E_2014 = 9.10938356e-31
LAMBDA_C = 2.426310235649455e-12  # 2*pi*hbar/(m_e c), mpmath at 40 digits


def test_mass_from_natural_frequency():
    m = electron_mass_from_frequency(7.763440716e20)
    assert abs(m / M_E_2014 - 1) < 5e-9


@pytest.mark.parametrize("omega", [0.0, -1.0])
def test_mass_rejects_non_positive(omega):
    with pytest.raises(DomainError):
        electron_mass_from_frequency(omega)


def test_identity_construction_gives_one_kilogram():
    c = CONSTANTS
    assert electron_mass_from_frequency(c.c**2 / c.hbar) == pytest.approx(1.0, rel=1e-15)


def test_mass_is_derived_not_stored():
    assert CONSTANTS.m_e == CONSTANTS.hbar * CONSTANTS.omega_e / CONSTANTS.c**2


@given(st.floats(min_value=1e10, max_value=1e25))
def test_mass_round_trip(omega):
    c = CONSTANTS
    back = electron_mass_from_frequency(omega) * c.c**2 / c.hbar
    assert back == pytest.approx(omega, rel=4 * 2.2e-16)


def test_compton_wavelength_value():
    assert compton_wavelength() == pytest.approx(LAMBDA_C, rel=1e-12)
    assert compton_wavelength() == pytest.approx(2.4263102e-12, rel=1e-5)


def test_compton_wavelength_scaling():
    base = compton_wavelength()
    # m_e depends on hbar and c, so hold m_e fixed by adjusting omega_e
    c0 = CONSTANTS
    twice_hbar = PhysicalConstants(hbar=2 * c0.hbar, omega_e=c0.omega_e / 2)
    twice_c = PhysicalConstants(c=2 * c0.c, omega_e=4 * c0.omega_e)
    assert twice_hbar.m_e == pytest.approx(c0.m_e, rel=1e-15)
    assert compton_wavelength(twice_hbar) == pytest.approx(2 * base, rel=1e-14)
    assert compton_wavelength(twice_c) == pytest.approx(base / 2, rel=1e-14)


def test_constants_must_be_positive():
    with pytest.raises(DomainError):
        PhysicalConstants(hbar=0.0)
    with pytest.raises(DomainError):
        PhysicalConstants(c=math.inf)


def test_constants_are_deterministic():
    assert PhysicalConstants().as_dict() == PhysicalConstants().as_dict()
    assert CONSTANTS.as_dict()["version"] == "CODATA 2014"
