"""Monte Carlo exposure of a random atom screen to a continuous wave.

Atoms are points scattered uniformly over a ``Lz x Ly`` window centred on
the origin. Each atom is excited at most once; a snapshot at exposure tau
lists every atom excited at or before tau.

Two excitation modes are available:

``exact_exponential``
    each atom draws one waiting time ``-ln(u) / relI`` from the exponential
    law. This is the default.
``literal_per_step``
    on a grid of steps of width ``dtau`` every still-unexcited atom draws a
    fresh uniform R and is excited if ``R <= 1 - exp(-relI * tau_k)``, with
    the *cumulative* probability at the current time tau_k. This over-counts
    relative to the exponential law and is kept for comparison.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import ConfigError
from .fields import IntensityField
from .rates import cumulative_excitation_probability

MODES = ("exact_exponential", "literal_per_step")
DEFAULT_DTAU = 0.01
_CHUNK = 65536


@dataclass(frozen=True)
class AtomScreen:
    positions: np.ndarray  # (N, 2) columns z, y
    window: tuple[float, float]  # (Lz, Ly)
    seed: int
    excited_at: np.ndarray | None = None

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 2:
            raise ConfigError("positions must have shape (N, 2)")
        lz, ly = self.window
        if np.any(np.abs(pos[:, 0]) > lz / 2) or np.any(np.abs(pos[:, 1]) > ly / 2):
            raise ConfigError("atom outside screen window")
        if self.excited_at is not None:
            exc = np.asarray(self.excited_at, dtype=float)
            if exc.shape != (pos.shape[0],) or np.any(exc < 0):
                raise ConfigError("excited_at must be one non-negative time (or inf) per atom")

    @property
    def size(self) -> int:
        return int(self.positions.shape[0])

    @property
    def z(self) -> np.ndarray:
        return self.positions[:, 0]

    @property
    def z_range(self) -> tuple[float, float]:
        return (-self.window[0] / 2, self.window[0] / 2)

    @property
    def y_range(self) -> tuple[float, float]:
        return (-self.window[1] / 2, self.window[1] / 2)


@dataclass(frozen=True)
class ExposureSchedule:
    taus: tuple[float, ...]

    def __post_init__(self) -> None:
        taus = tuple(float(t) for t in self.taus)
        if not taus:
            raise ConfigError("exposure schedule is empty")
        if any(t < 0 or not math.isfinite(t) for t in taus):
            raise ConfigError("exposure times must be finite and non-negative")
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise ConfigError("exposure times must be strictly increasing")
        object.__setattr__(self, "taus", taus)


@dataclass(frozen=True)
class Snapshot:
    tau: float
    excited_positions: np.ndarray = field(repr=False)

    @property
    def count(self) -> int:
        return int(self.excited_positions.shape[0])


def generate_screen(
    lz: float,
    ly: float,
    *,
    density: float | None = None,
    count: int | None = None,
    seed: int = 0,
) -> AtomScreen:
    """Scatter atoms uniformly over the window.

    Give either ``density`` (atoms per unit area; the atom count is
    ``round(density * lz * ly)``) or an explicit ``count``. With neither,
    unit density is used.
    """
    if not (lz > 0 and ly > 0):
        raise ConfigError(f"screen dimensions must be positive, got {lz!r} x {ly!r}")
    if density is not None and count is not None:
        raise ConfigError("give density or count, not both")
    if count is None:
        density = 1.0 if density is None else density
        if not density > 0:
            raise ConfigError(f"density must be positive, got {density!r}")
        count = int(round(density * lz * ly))
    if count < 1:
        raise ConfigError(f"screen must hold at least one atom, got {count}")
    idx = np.arange(count, dtype=np.uint64)
    u, v = rng.uniform_pair(seed, idx, 0, rng.STREAM_POSITION)
    positions = np.column_stack([(u - 0.5) * lz, (v - 0.5) * ly])
    return AtomScreen(positions=positions, window=(float(lz), float(ly)), seed=int(seed))


def sample_excitation_time(w, u):
    """Inverse-CDF draw ``-ln(u) / w`` from an exponential law of rate w.

    Where ``w <= 0`` the atom never excites and ``inf`` is returned.
    """
    w = np.asarray(w, dtype=float)
    u = np.asarray(u, dtype=float)
    if np.any((u <= 0) | (u >= 1)):
        raise ValueError("u must lie strictly inside (0, 1)")
    with np.errstate(divide="ignore"):
        t = np.where(w > 0, -np.log(u) / np.where(w > 0, w, 1.0), np.inf)
    return float(t) if t.ndim == 0 else t


def _exact_times(seed: int, rel: np.ndarray, start: int) -> np.ndarray:
    idx = np.arange(start, start + rel.size, dtype=np.uint64)
    u = rng.uniform(seed, idx, 0, rng.STREAM_EXCITATION)
    return sample_excitation_time(rel, u)


def _step_grid(schedule: ExposureSchedule, dtau: float) -> np.ndarray:
    t_max = schedule.taus[-1]
    n = int(math.floor(t_max / dtau + 1e-9))
    grid = np.arange(1, n + 1, dtype=float) * dtau
    return np.unique(np.concatenate([grid, np.asarray(schedule.taus)]))


def _literal_times(seed: int, rel: np.ndarray, start: int, grid: np.ndarray) -> np.ndarray:
    times = np.full(rel.size, np.inf)
    alive = np.flatnonzero(rel > 0)
    for step, tau in enumerate(grid):
        if alive.size == 0:
            break
        u = rng.uniform(seed, (alive + start).astype(np.uint64), step, rng.STREAM_STEP)
        # R <= P+ excites; u is in (0, 1) so u <= p matches the tie rule
        hit = u <= cumulative_excitation_probability(rel[alive], tau)
        times[alive[hit]] = tau
        alive = alive[~hit]
    return times


def excitation_times(
    screen: AtomScreen,
    field: IntensityField,
    schedule: ExposureSchedule,
    mode: str = "exact_exponential",
    *,
    dtau: float = DEFAULT_DTAU,
    threads: int = 1,
) -> np.ndarray:
    """Per-atom excitation time in units of tau (``inf`` if never within the run)."""
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "literal_per_step" and not dtau > 0:
        raise ConfigError(f"dtau must be positive, got {dtau!r}")
    rel = np.asarray(field(screen.z), dtype=float)
    starts = range(0, screen.size, _CHUNK)
    grid = _step_grid(schedule, dtau) if mode == "literal_per_step" else None

    def work(start: int) -> np.ndarray:
        chunk = rel[start:start + _CHUNK]
        if grid is None:
            return _exact_times(screen.seed, chunk, start)
        return _literal_times(screen.seed, chunk, start, grid)

    if threads > 1 and screen.size > _CHUNK:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(s) for s in starts]
    return np.concatenate(parts)


def run_exposure(
    screen: AtomScreen,
    field: IntensityField,
    schedule: ExposureSchedule,
    mode: str = "exact_exponential",
    *,
    dtau: float = DEFAULT_DTAU,
    threads: int = 1,
) -> list[Snapshot]:
    times = excitation_times(screen, field, schedule, mode, dtau=dtau, threads=threads)
    return [
        Snapshot(tau=tau, excited_positions=screen.positions[times <= tau])
        for tau in schedule.taus
    ]
