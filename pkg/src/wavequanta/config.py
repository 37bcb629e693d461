"""Run configuration: strict JSON schema with reference defaults."""

from __future__ import annotations

import copy
import json
import numbers
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .detector import MODES, ExposureSchedule
from .errors import ConfigError
from .fields import FringeGeometry

FIG1_EXPOSURES = [0.02, 0.1, 1.0, 10.0, 30.0]

_SCREEN = {
    "c1": 0.03,
    "r": 5.0,
    "window": [300.0, 100.0],
    "density": 1.0,
    "count": None,
    "mode": "exact_exponential",
    "dtau": 0.01,
    "bins": 100,
}

DEFAULTS: dict[str, dict[str, Any]] = {
    "double_slit_buildup": {
        **_SCREEN,
        "exposures": FIG1_EXPOSURES,
        "realizations": 1,
        "pixels_per_unit": 1.0,
    },
    "born_deviation": {**_SCREEN, "tau": 5.0, "realizations": 10},
    "matterwave_sweep": {"ck_min": 0.0, "ck_max": 3.0, "points": 31, "u_abs2": 1.0},
    "spin_check": {"samples": 10000, "grid_csv": None, "spacing": [1.0, 1.0, 1.0], "periodic": True},
    "compton_sweep": {
        "hbar_omega0_over_mc2": 1.0,
        "p0_over_mc": [0.0, 0.0, 0.0],
        "theta_points": 181,
    },
    "packet_widths": {
        "shape": "gaussian",
        "values": [1.0],
        "k_c": 0.0,
        "n": 4096,
        "extent": 40.0,
        "axis": "space",
    },
    "xsec": {"v2": [0.75, 1.0, 2.0, 5.0, 10.0], "n0": 1.0},
}

EXPERIMENTS = tuple(DEFAULTS)
TOP_LEVEL = {"experiment", "seed", "output_dir", "parameters"}
DEFAULT_SEED = 1


@dataclass
class RunConfig:
    experiment: str
    parameters: dict[str, Any]
    seed: int = DEFAULT_SEED
    output_dir: str | None = None
    source: str | None = field(default=None, repr=False)

    def as_dict(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "parameters": self.parameters,
        }


def _is_num(v) -> bool:
    return isinstance(v, numbers.Real) and not isinstance(v, bool)


def _require(cond: bool, path: str, msg: str) -> None:
    if not cond:
        raise ConfigError(f"{path}: {msg}")


def _check_number(params, key, *, positive=False, nonneg=False, integer=False, minimum=None):
    v = params[key]
    path = f"parameters.{key}"
    if integer:
        _require(isinstance(v, int) and not isinstance(v, bool), path, f"expected an integer, got {v!r}")
    else:
        _require(_is_num(v), path, f"expected a number, got {v!r}")
    if positive:
        _require(v > 0, path, f"must be positive, got {v!r}")
    if nonneg:
        _require(v >= 0, path, f"must be non-negative, got {v!r}")
    if minimum is not None:
        _require(v >= minimum, path, f"must be >= {minimum}, got {v!r}")


def _check_vector(params, key, length=3):
    v = params[key]
    _require(
        isinstance(v, list) and len(v) == length and all(_is_num(x) for x in v),
        f"parameters.{key}", f"expected a list of {length} numbers, got {v!r}",
    )


def _validate_screen(p: dict) -> None:
    for key in ("c1", "r"):
        _check_number(p, key)
    try:
        FringeGeometry(p["c1"], p["r"])
    except ConfigError as exc:
        raise ConfigError(f"parameters: {exc}") from None
    _check_vector(p, "window", 2)
    _require(all(x > 0 for x in p["window"]), "parameters.window", "dimensions must be positive")
    if p["count"] is not None:
        _check_number(p, "count", integer=True, minimum=1)
    _check_number(p, "density", positive=True)
    _require(p["mode"] in MODES, "parameters.mode", f"must be one of {list(MODES)}, got {p['mode']!r}")
    _check_number(p, "dtau", positive=True)
    _check_number(p, "bins", integer=True, minimum=1)
    _check_number(p, "realizations", integer=True, minimum=1)


def _validate(experiment: str, p: dict) -> None:
    if experiment in ("double_slit_buildup", "born_deviation"):
        _validate_screen(p)
    if experiment == "double_slit_buildup":
        _require(isinstance(p["exposures"], list) and all(_is_num(x) for x in p["exposures"]),
                 "parameters.exposures", "expected a list of numbers")
        try:
            ExposureSchedule(tuple(p["exposures"]))
        except ConfigError as exc:
            raise ConfigError(f"parameters.exposures: {exc}") from None
        _check_number(p, "pixels_per_unit", positive=True)
    elif experiment == "born_deviation":
        _check_number(p, "tau", nonneg=True)
    elif experiment == "matterwave_sweep":
        _check_number(p, "ck_min", nonneg=True)
        _check_number(p, "ck_max", nonneg=True)
        _require(p["ck_max"] >= p["ck_min"], "parameters.ck_max", "must be >= ck_min")
        _check_number(p, "points", integer=True, minimum=1)
        _check_number(p, "u_abs2", nonneg=True)
    elif experiment == "spin_check":
        _check_number(p, "samples", integer=True, minimum=1)
        _require(p["grid_csv"] is None or isinstance(p["grid_csv"], str),
                 "parameters.grid_csv", "expected a path string or null")
        _check_vector(p, "spacing", 3)
        _require(all(h > 0 for h in p["spacing"]), "parameters.spacing", "must be positive")
        _require(isinstance(p["periodic"], bool), "parameters.periodic", "expected true/false")
    elif experiment == "compton_sweep":
        _check_number(p, "hbar_omega0_over_mc2", positive=True)
        _check_vector(p, "p0_over_mc", 3)
        _check_number(p, "theta_points", integer=True, minimum=2)
    elif experiment == "packet_widths":
        _require(p["shape"] in ("gaussian", "hann"), "parameters.shape", "must be 'gaussian' or 'hann'")
        _require(isinstance(p["values"], list) and p["values"] and all(_is_num(x) and x > 0 for x in p["values"]),
                 "parameters.values", "expected a non-empty list of positive numbers")
        _check_number(p, "k_c")
        _check_number(p, "n", integer=True, minimum=16)
        _require(p["n"] & (p["n"] - 1) == 0, "parameters.n", "must be a power of two")
        _check_number(p, "extent", positive=True)
        _require(p["axis"] in ("space", "time"), "parameters.axis", "must be 'space' or 'time'")
    elif experiment == "xsec":
        _require(isinstance(p["v2"], list) and p["v2"] and all(_is_num(x) for x in p["v2"]),
                 "parameters.v2", "expected a non-empty list of numbers")
        _require(all(x > 0.5 for x in p["v2"]), "parameters.v2", "every v^2 must exceed the 0.50 threshold")
        _check_number(p, "n0", minimum=1)


def build_config(data: dict, *, source: str | None = None) -> RunConfig:
    """Validate a decoded config mapping and fill defaults."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(data) - TOP_LEVEL)
    if unknown:
        raise ConfigError(f"unknown key(s) at top level: {', '.join(unknown)}")
    experiment = data.get("experiment")
    _require(experiment in DEFAULTS, "experiment", f"must be one of {list(EXPERIMENTS)}, got {experiment!r}")
    seed = data.get("seed", DEFAULT_SEED)
    _require(isinstance(seed, int) and not isinstance(seed, bool) and 0 <= seed < 2**64,
             "seed", f"expected an unsigned 64-bit integer, got {seed!r}")
    out = data.get("output_dir")
    _require(out is None or isinstance(out, str), "output_dir", "expected a path string")
    given = data.get("parameters", {})
    _require(isinstance(given, dict), "parameters", "expected an object")
    unknown = sorted(set(given) - set(DEFAULTS[experiment]))
    if unknown:
        raise ConfigError(f"unknown key(s) in parameters for {experiment}: {', '.join(unknown)}")
    params = copy.deepcopy(DEFAULTS[experiment])
    params.update(copy.deepcopy(given))
    _validate(experiment, params)
    return RunConfig(experiment=experiment, parameters=params, seed=seed, output_dir=out, source=source)


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return build_config(data, source=str(path))
