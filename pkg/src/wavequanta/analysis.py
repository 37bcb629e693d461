"""Histograms of detected events and their comparison with theory curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .detector import AtomScreen, Snapshot
from .errors import ConfigError, FitError
from .fields import IntensityField
from .rates import cumulative_excitation_probability, detection_ratio

DEFAULT_BINS = 100
MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class Histogram:
    bin_edges: np.ndarray
    counts: np.ndarray
    normalized: np.ndarray
    dropped: int = 0

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[1:] + self.bin_edges[:-1])

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class FitResult:
    rmse: float
    chi_square: float
    dof: int

    @property
    def reduced_chi_square(self) -> float:
        return self.chi_square / self.dof if self.dof > 0 else float("nan")


def _max_normalize(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    peak = values.max() if values.size else 0.0
    return values / peak if peak > 0 else np.zeros_like(values)


def histogram(snapshot: Snapshot | np.ndarray, window: tuple[float, float], bins: int = DEFAULT_BINS) -> Histogram:
    """Bin event z-coordinates (y is marginalized) into ``bins`` equal bins.

    Bins are half-open except the last, which includes the upper edge. Events
    outside the window are dropped and counted in ``dropped``.
    """
    z_min, z_max = window
    if bins < 1:
        raise ConfigError(f"bins must be >= 1, got {bins}")
    if not z_min < z_max:
        raise ConfigError(f"empty window {window!r}")
    pts = snapshot.excited_positions if isinstance(snapshot, Snapshot) else np.asarray(snapshot)
    z = pts[:, 0] if pts.ndim == 2 else pts
    edges = np.linspace(z_min, z_max, bins + 1)
    inside = (z >= z_min) & (z <= z_max)
    idx = np.floor((z[inside] - z_min) / (z_max - z_min) * bins).astype(np.int64)
    idx = np.clip(idx, 0, bins - 1)
    counts = np.bincount(idx, minlength=bins).astype(np.int64)
    return Histogram(edges, counts, _max_normalize(counts), int(np.count_nonzero(~inside)))


def average_histograms(hists: list[Histogram]) -> Histogram:
    """Bin-wise mean of max-normalized histograms, renormalized to peak 1.

    ``counts`` of the result is the bin-wise sum, which is what the
    chi-square statistic needs.
    """
    if not hists:
        raise ConfigError("nothing to average")
    edges = hists[0].bin_edges
    if any(h.bin_edges.shape != edges.shape or not np.allclose(h.bin_edges, edges) for h in hists):
        raise ConfigError("histograms have different binning")
    mean = np.mean([h.normalized for h in hists], axis=0)
    counts = np.sum([h.counts for h in hists], axis=0)
    return Histogram(edges, counts, _max_normalize(mean), sum(h.dropped for h in hists))


def theoretical_curve(field: IntensityField, tau: float, z_grid) -> np.ndarray:
    """Relative detection probability p/p(0) along ``z_grid`` after exposure tau."""
    rel = np.asarray(field(np.asarray(z_grid, dtype=float)), dtype=float)
    if tau == 0:
        return rel
    return np.asarray(detection_ratio(rel, tau))


def _merge_groups(expected: np.ndarray, minimum: float) -> list[np.ndarray]:
    groups: list[list[int]] = []
    current: list[int] = []
    acc = 0.0
    for i, e in enumerate(expected):
        current.append(i)
        acc += e
        if acc >= minimum:
            groups.append(current)
            current, acc = [], 0.0
    if current:
        if groups:
            groups[-1].extend(current)
        else:
            groups.append(current)
    return [np.asarray(g) for g in groups]


def goodness_of_fit(hist: Histogram, curve) -> FitResult:
    """Compare a histogram with a theory curve sampled at the bin centres.

    RMSE is taken between the max-normalized histogram and the curve.
    Pearson chi-square uses expected counts from the curve scaled to the
    histogram total; adjacent bins are merged left to right until each
    group expects at least 5 events.
    """
    curve = np.asarray(curve, dtype=float)
    if curve.shape != hist.counts.shape:
        raise ConfigError(f"curve has {curve.size} points for {hist.counts.size} bins")
    total = hist.counts.sum()
    if total == 0:
        raise FitError("histogram is empty; fit undefined")
    if not curve.sum() > 0:
        raise FitError("theory curve is identically zero; fit undefined")
    rmse = float(np.sqrt(np.mean((hist.normalized - curve) ** 2)))
    expected = curve / curve.sum() * total
    chi2 = 0.0
    groups = _merge_groups(expected, MIN_EXPECTED)
    for g in groups:
        e = expected[g].sum()
        o = hist.counts[g].sum()
        if e > 0:
            chi2 += (o - e) ** 2 / e
    return FitResult(rmse=rmse, chi_square=float(chi2), dof=len(groups) - 1)


def expected_count(field: IntensityField, screen: AtomScreen, tau: float) -> float:
    """Mean number of excited atoms on this screen after exposure tau."""
    rel = np.asarray(field(screen.z), dtype=float)
    return float(np.sum(cumulative_excitation_probability(rel, tau)))


def mean_excitation_probability(field: IntensityField, tau: float, half_width: float) -> float:
    """Average of P+ over z in [-half_width, half_width] (continuous integral)."""
    val, _ = quad(
        lambda z: cumulative_excitation_probability(field(z), tau),
        -half_width, half_width, limit=1000,
    )
    return val / (2.0 * half_width)


@dataclass(frozen=True)
class Calibration:
    half_width: float
    atom_count: float

    @property
    def height(self) -> float:
        """Screen height giving unit density for the calibrated count."""
        return self.atom_count / (2.0 * self.half_width)


def calibrate_window(
    field: IntensityField,
    tau_a: float,
    count_a: float,
    tau_b: float,
    count_b: float,
    bracket: tuple[float, float] = (20.0, 2000.0),
) -> Calibration:
    """Find the window half-width and atom count reproducing two target counts."""
    target = count_b / count_a

    def mismatch(half: float) -> float:
        return (
            mean_excitation_probability(field, tau_b, half)
            / mean_excitation_probability(field, tau_a, half)
            - target
        )

    half = brentq(mismatch, *bracket, xtol=1e-10)
    n = count_a / mean_excitation_probability(field, tau_a, half)
    return Calibration(half_width=half, atom_count=n)
