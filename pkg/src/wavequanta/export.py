"""CSV and PGM writers plus spinor-grid CSV I/O.

CSV files use a header row, comma separators and LF line endings; floats
are written in scientific notation with 9 significant digits so that
identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .detector import Snapshot
from .errors import ConfigError
from .spinor import SpinorGrid


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.8e}"


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
    return path


def render_pgm(
    snapshot: Snapshot | np.ndarray,
    window: tuple[float, float],
    scale: float = 1.0,
) -> bytes:
    """Plain (P2) graymap of a snapshot: white background, one black pixel per atom.

    ``window`` is (Lz, Ly) for a screen centred on the origin. Atom z runs
    along image columns, y along rows.
    """
    lz, ly = window
    if not scale > 0:
        raise ConfigError(f"scale must be positive, got {scale!r}")
    if not (lz > 0 and ly > 0):
        raise ConfigError(f"zero-area window {window!r}")
    width = math.ceil(lz * scale)
    height = math.ceil(ly * scale)
    img = np.full((height, width), 255, dtype=np.uint8)
    pts = snapshot.excited_positions if isinstance(snapshot, Snapshot) else np.asarray(snapshot)
    if pts.size:
        col = np.clip(np.floor((pts[:, 0] + lz / 2) * scale).astype(np.int64), 0, width - 1)
        row = np.clip(np.floor((pts[:, 1] + ly / 2) * scale).astype(np.int64), 0, height - 1)
        img[row, col] = 0
    lines = [f"P2\n{width} {height}\n255\n"]
    for r in img:
        vals = [str(v) for v in r]
        # keep lines under 70 characters as the format recommends
        for start in range(0, len(vals), 17):
            lines.append(" ".join(vals[start:start + 17]) + "\n")
    return "".join(lines).encode("ascii")


def read_pgm(data: bytes) -> np.ndarray:
    tokens = data.decode("ascii").split()
    if tokens[0] != "P2":
        raise ConfigError("not a plain PGM")
    width, height = int(tokens[1]), int(tokens[2])
    return np.array(tokens[4:4 + width * height], dtype=int).reshape(height, width)


GRID_HEADER = ["ix", "iy", "iz", "re_up", "im_up", "re_down", "im_down"]
CURRENT_HEADER = ["ix", "iy", "iz", "jx", "jy", "jz"]


def read_spinor_grid(path: str | Path, spacing=(1.0, 1.0, 1.0)) -> SpinorGrid:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != GRID_HEADER:
            raise ConfigError(f"{path}: expected header {','.join(GRID_HEADER)}")
        rows = [r for r in reader if r]
    if not rows:
        raise ConfigError(f"{path}: no data rows")
    try:
        idx = np.array([[int(r[0]), int(r[1]), int(r[2])] for r in rows])
        vals = np.array([[float(x) for x in r[3:7]] for r in rows])
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"{path}: malformed row") from exc
    if idx.min() < 0:
        raise ConfigError(f"{path}: negative grid index")
    shape = tuple(idx.max(axis=0) + 1)
    if len(rows) != int(np.prod(shape)) or len({tuple(i) for i in idx}) != len(rows):
        raise ConfigError(f"{path}: grid is not a complete {shape} block")
    samples = np.zeros(shape + (2,), dtype=complex)
    samples[idx[:, 0], idx[:, 1], idx[:, 2], 0] = vals[:, 0] + 1j * vals[:, 1]
    samples[idx[:, 0], idx[:, 1], idx[:, 2], 1] = vals[:, 2] + 1j * vals[:, 3]
    return SpinorGrid(samples=samples, spacing=tuple(spacing))


def write_spinor_grid(path: str | Path, grid: SpinorGrid) -> Path:
    nx, ny, nz = grid.shape
    psi = grid.samples
    rows = (
        (i, j, k, psi[i, j, k, 0].real, psi[i, j, k, 0].imag, psi[i, j, k, 1].real, psi[i, j, k, 1].imag)
        for i in range(nx) for j in range(ny) for k in range(nz)
    )
    return write_csv(path, GRID_HEADER, rows)


def write_vector_field(path: str | Path, field: np.ndarray) -> Path:
    nx, ny, nz = field.shape[:3]
    rows = (
        (i, j, k, *field[i, j, k])
        for i in range(nx) for j in range(ny) for k in range(nz)
    )
    return write_csv(path, CURRENT_HEADER, rows)
