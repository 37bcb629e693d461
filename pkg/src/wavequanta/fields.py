"""Normalized intensity profiles I/I0 on the detector coordinate z."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .errors import ConfigError, DomainError

ArrayLike = Union[float, np.ndarray]

_SERIES_CUTOFF = 1e-4
DEFAULT_WINDOW = (-150.0, 150.0)


@dataclass(frozen=True)
class FringeGeometry:
    """Composite double-slit parameters.

    ``c1`` is pi * slit_width / (wavelength * screen_distance) and ``r`` is
    slit_separation / slit_width. Only these combinations shape the pattern.
    """

    c1: float = 0.03
    r: float = 5.0

    def __post_init__(self) -> None:
        if not self.c1 > 0:
            raise ConfigError(f"c1 must be positive, got {self.c1!r}")
        if not self.r >= 0:
            raise ConfigError(f"r must be non-negative, got {self.r!r}")


def _sinc_squared(x: np.ndarray) -> np.ndarray:
    small = np.abs(x) < _SERIES_CUTOFF
    safe = np.where(small, 1.0, x)
    out = (np.sin(safe) / safe) ** 2
    return np.where(small, 1.0 - x * x / 3.0, out)


def double_slit_intensity(z: ArrayLike, geom: FringeGeometry) -> ArrayLike:
    """cos^2(r x) * (sin x / x)^2 with x = c1 * z."""
    x = geom.c1 * np.asarray(z, dtype=float)
    out = np.cos(geom.r * x) ** 2 * _sinc_squared(x)
    return float(out) if out.ndim == 0 else out


class IntensityField:
    """Base for fields evaluated as ``field(z) -> relI``."""

    window: tuple[float, float]

    def __call__(self, z: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class DoubleSlitField(IntensityField):
    geom: FringeGeometry = field(default_factory=FringeGeometry)
    window: tuple[float, float] = DEFAULT_WINDOW

    def __call__(self, z: ArrayLike) -> ArrayLike:
        return double_slit_intensity(z, self.geom)

    def describe(self) -> dict:
        return {"kind": "double_slit", "c1": self.geom.c1, "r": self.geom.r,
                "window": list(self.window)}


@dataclass(frozen=True)
class UniformField(IntensityField):
    window: tuple[float, float] = DEFAULT_WINDOW

    def __call__(self, z: ArrayLike) -> ArrayLike:
        z = np.asarray(z, dtype=float)
        out = np.ones_like(z)
        return float(out) if out.ndim == 0 else out

    def describe(self) -> dict:
        return {"kind": "uniform", "window": list(self.window)}


class TabulatedField(IntensityField):
    """Piecewise-linear field through ``(z, relI)`` samples.

    The table must be strictly increasing in z, with values in [0, 1] and a
    maximum of 1.
    """

    def __init__(self, z, rel_intensity):
        z = np.asarray(z, dtype=float)
        rel = np.asarray(rel_intensity, dtype=float)
        if z.ndim != 1 or z.shape != rel.shape or z.size < 2:
            raise ConfigError("tabulated field needs two equal-length 1-D columns with >= 2 rows")
        if np.any(np.diff(z) <= 0):
            raise ConfigError("tabulated z must be strictly increasing")
        if np.any(rel < 0) or np.any(rel > 1):
            raise ConfigError("tabulated intensities must lie in [0, 1]")
        if abs(rel.max() - 1.0) > 1e-6:
            raise ConfigError(f"tabulated intensities must peak at 1, max is {rel.max():.9g}")
        self.z = z
        self.rel = rel
        self.window = (float(z[0]), float(z[-1]))

    def __call__(self, z: ArrayLike) -> ArrayLike:
        return tabulated_intensity(self, z)

    def describe(self) -> dict:
        return {"kind": "tabulated", "rows": int(self.z.size), "window": list(self.window)}


def tabulated_intensity(field: TabulatedField, z: ArrayLike) -> ArrayLike:
    zz = np.asarray(z, dtype=float)
    if np.any(zz < field.z[0]) or np.any(zz > field.z[-1]):
        raise DomainError(
            f"z outside tabulated range [{field.z[0]:g}, {field.z[-1]:g}]"
        )
    out = np.interp(zz, field.z, field.rel)
    return float(out) if out.ndim == 0 else out


def load_tabulated_csv(path: str | Path) -> TabulatedField:
    """Read a ``z,rel_intensity`` CSV (header row required)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["z", "rel_intensity"]:
            raise ConfigError(f"{path}: expected header 'z,rel_intensity', got {header!r}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError) as exc:
                raise ConfigError(f"{path}:{lineno}: bad row {row!r}") from exc
    if not rows:
        raise ConfigError(f"{path}: no data rows")
    z, rel = zip(*rows)
    return TabulatedField(z, rel)
