import math

import numpy as np
import pytest
from scipy.integrate import quad

from wavequanta import CONSTANTS, ConfigError, ResolutionError
from wavequanta.wavepacket import (
    SampledPacket,
    build_packet,
    momentum_product,
    rms_widths,
    spectrum,
    time_frequency_widths,
)


def hann_oracle(width):
    """Continuous RMS widths of cos^2(pi x / width) on |x| <= width/2, by quadrature."""
    f = lambda x: math.cos(math.pi * x / width) ** 2  # noqa: E731
    df = lambda x: -(math.pi / width) * math.sin(2 * math.pi * x / width)  # noqa: E731
    a = width / 2
    norm = quad(lambda x: f(x) ** 2, -a, a)[0]
    dx = math.sqrt(quad(lambda x: x * x * f(x) ** 2, -a, a)[0] / norm)
    # for a real envelope <k> = 0 and <k^2> = int |f'|^2 / int |f|^2
    dk = math.sqrt(quad(lambda x: df(x) ** 2, -a, a)[0] / norm)
    return dx, dk


class TestBuild:
    def test_gaussian_boundary(self):
        p = build_packet("gaussian", 4096, 40.0, sigma=1.0)
        assert p.boundary_ratio < 1e-8

    def test_hann_compact_support(self):
        p = build_packet("hann", 4096, 40.0, width=10.0)
        outside = np.abs(p.coords) > 5.0
        assert np.all(p.samples[outside] == 0)

    def test_delta_rejected(self):
        samples = np.zeros(256)
        samples[128] = 1.0
        with pytest.raises(ConfigError):
            build_packet("tabulated", 256, 10.0, samples=samples)

    def test_rectangle_rejected(self):
        x = np.linspace(-20, 20, 256, endpoint=False)
        with pytest.raises(ResolutionError):
            build_packet("tabulated", 256, 40.0, samples=(np.abs(x) < 5).astype(float))

    def test_boundary_violation(self):
        with pytest.raises(ConfigError, match="boundary"):
            build_packet("gaussian", 256, 8.0, sigma=1.0)

    @pytest.mark.parametrize("n", [8, 100, 1000])
    def test_grid_size(self, n):
        with pytest.raises(ConfigError):
            build_packet("gaussian", n, 40.0)

    def test_unknown_shape(self):
        with pytest.raises(ConfigError):
            build_packet("square", 256, 40.0)


class TestWidths:
    def test_gaussian_equality_case(self):
        w = rms_widths(build_packet("gaussian", 4096, 40.0, sigma=1.0))
        assert w.delta_x == pytest.approx(1.0, rel=5e-3)
        assert w.delta_k == pytest.approx(0.5, rel=5e-3)
        assert w.product == pytest.approx(0.5, rel=5e-3)
        assert w.product >= 0.5 - w.eps_grid - 1e-12

    def test_shifted_carrier(self):
        w = rms_widths(build_packet("gaussian", 4096, 40.0, sigma=1.0, k_c=5.0))
        assert w.mean_k == pytest.approx(5.0, abs=1e-9)
        assert w.delta_x == pytest.approx(1.0, rel=5e-3)
        assert w.delta_k == pytest.approx(0.5, rel=5e-3)

    def test_hann_matches_quadrature(self):
        w = rms_widths(build_packet("hann", 4096, 40.0, width=10.0))
        dx, dk = hann_oracle(10.0)
        assert w.product > 0.5
        assert w.product == pytest.approx(dx * dk, rel=0.01)
        assert w.delta_x == pytest.approx(dx, rel=0.01)
        assert w.delta_k == pytest.approx(dk, rel=0.01)

    def test_parseval(self):
        for packet in (
            build_packet("gaussian", 4096, 40.0, sigma=1.0, k_c=3.0),
            build_packet("hann", 4096, 40.0, width=10.0),
        ):
            assert rms_widths(packet).parseval_residual < 1e-10

    @pytest.mark.parametrize("a", [0.5, 2.0])
    def test_scale_covariance(self, a):
        base = rms_widths(build_packet("hann", 4096, 40.0, width=8.0))
        dil = rms_widths(build_packet("hann", 4096, 40.0, width=8.0 * a))
        assert dil.delta_x == pytest.approx(a * base.delta_x, rel=1e-3)
        assert dil.delta_k == pytest.approx(base.delta_k / a, rel=1e-3)
        assert dil.product == pytest.approx(base.product, rel=1e-3)

    def test_momentum_form(self):
        w = rms_widths(build_packet("gaussian", 4096, 40.0, sigma=1.0))
        assert momentum_product(w, CONSTANTS.hbar) == CONSTANTS.hbar * w.product

    def test_axis_guard(self):
        p = build_packet("gaussian", 1024, 40.0, axis="time")
        with pytest.raises(ConfigError):
            rms_widths(p)

    def test_spectrum_grid(self):
        p = build_packet("gaussian", 64, 40.0, sigma=1.5)
        s = spectrum(p)
        assert s.k[32] == 0.0
        assert s.dk == pytest.approx(2 * math.pi / 40.0)


class TestTimeFrequency:
    def test_gaussian_pulse(self):
        w = time_frequency_widths(build_packet("gaussian", 4096, 40.0, sigma=1.0, axis="time"))
        assert w.product == pytest.approx(0.5, rel=5e-3)

    def test_compression_doubles_bandwidth(self):
        a = time_frequency_widths(build_packet("gaussian", 4096, 40.0, sigma=1.0, axis="time"))
        b = time_frequency_widths(build_packet("gaussian", 4096, 40.0, sigma=0.5, axis="time"))
        assert b.delta_omega == pytest.approx(2 * a.delta_omega, rel=1e-6)
        assert b.delta_t == pytest.approx(a.delta_t / 2, rel=1e-6)

    def test_hann_pulse(self):
        w = time_frequency_widths(build_packet("hann", 4096, 40.0, width=10.0, axis="time"))
        dt, dw = hann_oracle(10.0)
        assert w.product > 0.5
        assert w.product == pytest.approx(dt * dw, rel=0.01)

    def test_axis_guard(self):
        with pytest.raises(ConfigError):
            time_frequency_widths(build_packet("gaussian", 1024, 40.0))


def test_packet_validation():
    with pytest.raises(ConfigError):
        SampledPacket(np.ones(8), 1.0)
    with pytest.raises(ConfigError):
        SampledPacket(np.zeros(32), 1.0)
    with pytest.raises(ConfigError):
        SampledPacket(np.ones(32), -1.0)
