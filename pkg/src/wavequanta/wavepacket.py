"""RMS widths of sampled 1-D wave packets in position and wavenumber.

The spectrum is the forward DFT (kernel exp(-i k x)) scaled by the grid
step, which approximates the continuous Fourier transform; the wavenumber
grid is k_j = 2 pi j / (N * spacing) with j running over -N/2 .. N/2 - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ResolutionError

MIN_SAMPLES = 16
BOUNDARY_LIMIT = 1e-8
NYQUIST_BINS = 3
NYQUIST_LIMIT = 1e-6


@dataclass(frozen=True)
class SampledPacket:
    samples: np.ndarray
    spacing: float
    axis: str = "space"
    origin: float = 0.0

    def __post_init__(self) -> None:
        psi = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", psi)
        if psi.ndim != 1 or psi.size < MIN_SAMPLES:
            raise ConfigError(f"packet needs >= {MIN_SAMPLES} samples, got {psi.size}")
        if not self.spacing > 0:
            raise ConfigError(f"spacing must be positive, got {self.spacing!r}")
        if self.axis not in ("space", "time"):
            raise ConfigError(f"axis must be 'space' or 'time', got {self.axis!r}")
        if not np.sum(np.abs(psi) ** 2) * self.spacing > 0:
            raise ConfigError("packet has zero total weight")
        ratio = self.boundary_ratio
        if ratio > BOUNDARY_LIMIT:
            raise ConfigError(
                f"packet not small at the grid boundary (ratio {ratio:.3e} > {BOUNDARY_LIMIT:g})"
            )

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def coords(self) -> np.ndarray:
        return self.origin + self.spacing * np.arange(self.n)

    @property
    def boundary_ratio(self) -> float:
        a = np.abs(self.samples)
        return float(max(a[0], a[-1]) / a.max())


def build_packet(shape: str, n: int, extent: float, *, sigma: float = 1.0, width: float = 10.0,
                 k_c: float = 0.0, samples=None, axis: str = "space") -> SampledPacket:
    """Sample a packet on ``n`` points spanning ``[-extent/2, extent/2)``.

    ``shape`` is ``"gaussian"`` (envelope exp(-x^2 / (4 sigma^2)), so sigma is
    the RMS width of |psi|^2), ``"hann"`` (cos^2(pi x / width) on
    |x| <= width/2) or ``"tabulated"`` (``samples`` used as given). The
    envelope is multiplied by exp(i k_c x).
    """
    if n < MIN_SAMPLES or n & (n - 1):
        raise ConfigError(f"n must be a power of two >= {MIN_SAMPLES}, got {n}")
    if not extent > 0:
        raise ConfigError(f"extent must be positive, got {extent!r}")
    h = extent / n
    x = -extent / 2 + h * np.arange(n)
    if shape == "gaussian":
        if not sigma > 0:
            raise ConfigError(f"sigma must be positive, got {sigma!r}")
        env = np.exp(-x * x / (4.0 * sigma * sigma))
    elif shape == "hann":
        if not width > 0:
            raise ConfigError(f"width must be positive, got {width!r}")
        env = np.where(np.abs(x) <= width / 2, np.cos(np.pi * x / width) ** 2, 0.0)
    elif shape == "tabulated":
        if samples is None or np.size(samples) != n:
            raise ConfigError(f"tabulated packet needs exactly {n} samples")
        env = np.asarray(samples, dtype=complex)
    else:
        raise ConfigError(f"unknown packet shape {shape!r}")
    psi = env * np.exp(1j * k_c * x)
    packet = SampledPacket(samples=psi, spacing=h, axis=axis, origin=x[0])
    # a packet whose spectrum reaches the Nyquist edge cannot yield a width
    spectrum(packet)
    return packet


@dataclass(frozen=True)
class Spectrum:
    k: np.ndarray
    phi: np.ndarray
    nyquist_fraction: float

    @property
    def dk(self) -> float:
        return float(self.k[1] - self.k[0])


def spectrum(packet: SampledPacket) -> Spectrum:
    """Centred continuous-FT approximation; raises if under-resolved."""
    n, h = packet.n, packet.spacing
    k = 2.0 * np.pi * np.fft.fftshift(np.fft.fftfreq(n, d=h))
    # phase factor moves the transform origin from the first sample to x = 0
    phi = h * np.fft.fftshift(np.fft.fft(packet.samples)) * np.exp(-1j * k * packet.origin)
    power = np.abs(phi) ** 2
    edge = power[:NYQUIST_BINS].sum() + power[-NYQUIST_BINS:].sum()
    frac = float(edge / power.sum())
    if frac > NYQUIST_LIMIT:
        raise ResolutionError(
            f"spectral weight near the Nyquist edge is {frac:.3e} of the total "
            f"(limit {NYQUIST_LIMIT:g}); refine the grid"
        )
    return Spectrum(k=k, phi=phi, nyquist_fraction=frac)


def _rms(coord: np.ndarray, weight: np.ndarray) -> tuple[float, float]:
    w = weight / weight.sum()
    mean = float(np.sum(coord * w))
    return mean, float(np.sqrt(np.sum((coord - mean) ** 2 * w)))


@dataclass(frozen=True)
class Widths:
    delta_x: float
    delta_k: float
    product: float
    mean_x: float
    mean_k: float
    eps_grid: float
    parseval_residual: float


def _widths(packet: SampledPacket) -> Widths:
    spec = spectrum(packet)
    wx = np.abs(packet.samples) ** 2
    wk = np.abs(spec.phi) ** 2
    mean_x, dx = _rms(packet.coords, wx)
    mean_k, dk = _rms(spec.k, wk)
    norm_x = wx.sum() * packet.spacing
    norm_k = wk.sum() * spec.dk / (2.0 * np.pi)
    return Widths(
        delta_x=dx,
        delta_k=dk,
        product=dx * dk,
        mean_x=mean_x,
        mean_k=mean_k,
        eps_grid=spec.nyquist_fraction + packet.boundary_ratio,
        parseval_residual=float(abs(norm_k - norm_x) / norm_x),
    )


def rms_widths(packet: SampledPacket) -> Widths:
    """RMS position and wavenumber widths about their centroids.

    ``eps_grid`` bounds the discretization error of the product; the
    continuous bound is product >= 1/2.
    """
    if packet.axis != "space":
        raise ConfigError("rms_widths expects a space-axis packet; use time_frequency_widths")
    return _widths(packet)


@dataclass(frozen=True)
class TimeFrequencyWidths:
    delta_t: float
    delta_omega: float
    product: float
    eps_grid: float


def time_frequency_widths(packet: SampledPacket) -> TimeFrequencyWidths:
    """Duration and bandwidth of a pulse sampled in time."""
    if packet.axis != "time":
        raise ConfigError("time_frequency_widths expects a time-axis packet")
    w = _widths(packet)
    return TimeFrequencyWidths(w.delta_x, w.delta_k, w.product, w.eps_grid)


def momentum_product(widths: Widths, hbar: float) -> float:
    """Position-momentum product hbar * dx * dk."""
    return hbar * widths.product
