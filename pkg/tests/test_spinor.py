import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wavequanta import CONSTANTS, ConfigError, DomainError
from wavequanta.spinor import (
    PAULI,
    SpinorGrid,
    current_on_grid,
    pointwise_densities,
    portion_spin,
    spin_bilinear,
    spinor,
)

C = CONSTANTS
HALF_HBAR = C.hbar / 2

amp = st.floats(min_value=-10, max_value=10, allow_nan=False)
spinor_st = st.tuples(amp, amp, amp, amp).filter(lambda t: sum(x * x for x in t) > 1e-6).map(
    lambda t: spinor(complex(t[0], t[1]), complex(t[2], t[3]))
)


def matrix_bilinear(chi):
    """chi^dagger sigma_a chi by explicit 2x2 multiplication."""
    return np.array([np.real(np.conj(chi) @ (s @ chi)) for s in PAULI])


@pytest.mark.parametrize(
    "chi,expected",
    [
        (spinor(1, 0), (0, 0, 1)),
        (spinor(0, 1), (0, 0, -1)),
        (spinor(1, 1) / math.sqrt(2), (1, 0, 0)),
        (spinor(1, 1j) / math.sqrt(2), (0, 1, 0)),
    ],
)
def test_eigenstates(chi, expected):
    S = pointwise_densities(chi).S_vec
    assert np.allclose(S, HALF_HBAR * np.array(expected), rtol=0, atol=1e-15 * C.hbar)
    assert np.allclose(spin_bilinear(chi), matrix_bilinear(chi), atol=1e-15)


@given(spinor_st)
def test_bilinear_matches_matrices(chi):
    assert np.allclose(spin_bilinear(chi), matrix_bilinear(chi), rtol=1e-12, atol=1e-12)


@given(spinor_st)
def test_constant_spin_length(chi):
    S = pointwise_densities(chi).S_vec
    assert abs(np.linalg.norm(S) - HALF_HBAR) < 1e-12 * C.hbar


@given(spinor_st, st.floats(min_value=0, max_value=2 * math.pi))
def test_global_phase_invariance(chi, phi):
    a = pointwise_densities(chi)
    b = pointwise_densities(np.exp(1j * phi) * chi)
    assert b.rho == pytest.approx(a.rho, rel=1e-12)
    assert np.allclose(b.s_vec, a.s_vec, rtol=1e-9, atol=1e-12 * abs(a.rho) * C.hbar / C.e_charge)


@given(spinor_st, st.floats(min_value=0.1, max_value=10), st.floats(min_value=0, max_value=6.3))
def test_scaling_covariance(chi, mag, phase):
    lam = mag * np.exp(1j * phase)
    a = pointwise_densities(chi)
    b = pointwise_densities(lam * chi)
    assert b.rho == pytest.approx(mag**2 * a.rho, rel=1e-12)
    scale = np.linalg.norm(a.s_vec)
    assert np.allclose(b.s_vec, mag**2 * a.s_vec, rtol=0, atol=1e-12 * mag**2 * scale)
    assert np.allclose(b.S_vec, a.S_vec, rtol=0, atol=1e-12 * C.hbar)


@given(spinor_st)
def test_gyromagnetic_ratio(chi):
    d = pointwise_densities(chi)
    ratio = np.linalg.norm(d.m_vec) / np.linalg.norm(d.s_vec)
    assert ratio == pytest.approx(C.e_charge / (C.m_e * C.c), rel=1e-12)
    orbital = C.e_charge / (2 * C.m_e * C.c)
    assert ratio / orbital == pytest.approx(2.0, rel=1e-12)


def test_batch_shapes():
    chi = np.ones((4, 5, 2), dtype=complex)
    d = pointwise_densities(chi)
    assert d.rho.shape == (4, 5) and d.S_vec.shape == (4, 5, 3)


def test_zero_spinor():
    with pytest.raises(DomainError):
        pointwise_densities(spinor(0, 0))


class TestPortionSpin:
    def test_unit_charge_portion(self, rand):
        for _ in range(20):
            chi = spinor(complex(*rand.normal(size=2)), complex(*rand.normal(size=2)))
            norm2 = np.vdot(chi, chi).real
            p = portion_spin(chi, 1.0 / norm2)
            assert p.dq == pytest.approx(-C.e_charge, rel=1e-14)
            assert np.linalg.norm(p.dL_s) == pytest.approx(HALF_HBAR, rel=1e-12)
            assert np.linalg.norm(p.dmu) == pytest.approx(C.bohr_magneton, rel=1e-12)

    def test_zero_volume(self):
        p = portion_spin(spinor(1, 2j), 0.0)
        assert p.dq == 0 and not np.any(p.dL_s) and not np.any(p.dmu)

    def test_identities(self, rand):
        for _ in range(100):
            chi = spinor(complex(*rand.normal(size=2)), complex(*rand.normal(size=2)))
            p = portion_spin(chi, 2.5)
            resid = np.abs(p.dmu - C.gamma_e * p.dL_s)
            assert np.all(resid <= 1e-12 * np.linalg.norm(p.dmu))
            assert np.linalg.norm(p.dL_s) == pytest.approx(HALF_HBAR * abs(p.dq) / C.e_charge, rel=1e-12)

    def test_negative_volume(self):
        with pytest.raises(DomainError):
            portion_spin(spinor(1, 0), -1.0)


class TestGridCurrents:
    def test_uniform_spinor(self):
        grid = SpinorGrid(np.tile(spinor(0.3 + 0.1j, -0.7j), (5, 4, 3, 1)))
        cur = current_on_grid(grid)
        for j in (cur.j_total, cur.j_convective, cur.j_spin):
            assert np.all(j == 0)

    @pytest.mark.parametrize("periods", [1, 3])
    def test_plane_wave(self, periods):
        n, length = 64, 2.0e-9
        h = length / n
        k = 2 * math.pi * periods / length
        x = h * np.arange(n)
        u = 0.8
        samples = np.zeros((n, 1, 1, 2), dtype=complex)
        samples[:, 0, 0, 0] = u * np.exp(1j * k * x)
        cur = current_on_grid(SpinorGrid(samples, spacing=(h, 1.0, 1.0)))
        k_eff = math.sin(k * h) / h
        expected = -(C.e_charge * C.hbar * k_eff / C.m_e) * u**2
        assert np.allclose(cur.j_convective[..., 0], expected, rtol=1e-12, atol=0)
        assert np.all(cur.j_convective[..., 1:] == 0)
        # uniform spin density: no curl
        assert np.allclose(cur.j_spin, 0, atol=1e-12 * abs(expected))

    def test_vector_potential_term(self):
        samples = np.tile(spinor(2.0, 0.0), (3, 1, 1, 1))
        a = np.zeros((3, 1, 1, 3))
        a[..., 1] = 5.0
        cur = current_on_grid(SpinorGrid(samples, vector_potential=a))
        expected = -(C.e_charge**2 / (C.m_e * C.c)) * 5.0 * 4.0
        assert np.allclose(cur.j_convective[..., 1], expected, rtol=1e-14)

    def test_spin_current_has_no_component_along_gradient(self):
        n = 16
        z = np.arange(n)
        amp = 1.0 + 0.5 * np.sin(2 * math.pi * z / n)
        samples = np.zeros((3, 3, n, 2), dtype=complex)
        samples[..., 0] = amp[None, None, :]
        cur = current_on_grid(SpinorGrid(samples, spacing=(1.0, 1.0, 1.0)))
        assert np.all(cur.j_spin[..., 2] == 0)
        assert np.all(cur.j_spin == 0)  # m = f(z) z-hat has zero curl

    def test_spin_current_is_curl_of_moment(self):
        # spin along z varying along x: curl gives -d m_z/dx along y
        n = 32
        h = 0.5
        x = h * np.arange(n)
        amp = np.sqrt(1.0 + 0.5 * np.cos(2 * math.pi * x / (n * h)))
        samples = np.zeros((n, 1, 1, 2), dtype=complex)
        samples[:, 0, 0, 0] = amp
        cur = current_on_grid(SpinorGrid(samples, spacing=(h, 1.0, 1.0)))
        mz = C.gamma_e * HALF_HBAR * amp**2
        dmz = (np.roll(mz, -1) - np.roll(mz, 1)) / (2 * h)
        assert np.allclose(cur.j_spin[:, 0, 0, 1], -C.c * dmz, rtol=1e-12, atol=0)
        assert np.allclose(cur.j_total, cur.j_convective + cur.j_spin)

    def test_one_sided_edges(self):
        n = 8
        x = np.arange(n, dtype=float)
        samples = np.zeros((n, 1, 1, 2), dtype=complex)
        samples[:, 0, 0, 0] = np.exp(1j * 0.1 * x)
        cur = current_on_grid(SpinorGrid(samples), periodic=False)
        assert np.all(np.isfinite(cur.j_convective))

    def test_too_small(self):
        with pytest.raises(ConfigError):
            current_on_grid(SpinorGrid(np.ones((2, 1, 1, 2))))
        with pytest.raises(ConfigError):
            current_on_grid(SpinorGrid(np.ones((1, 1, 1, 2))))

    def test_grid_validation(self):
        with pytest.raises(ConfigError):
            SpinorGrid(np.ones((3, 3, 2)))
        with pytest.raises(ConfigError):
            SpinorGrid(np.ones((3, 1, 1, 2)), spacing=(0.0, 1.0, 1.0))
