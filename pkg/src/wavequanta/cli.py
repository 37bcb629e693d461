"""Command-line entry point.

Exit codes: 0 success, 1 configuration error, 2 numeric or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time
import traceback
from pathlib import Path

import numpy as np

from . import __version__
from .config import DEFAULT_SEED, RunConfig, build_config, load_config
from .errors import ConfigError, DomainError
from .physconst import CONSTANTS
from .runner import DRIVERS

OUT_ENV = "WAVEQUANTA_OUT"

SUBCOMMANDS = {
    "simulate": "double_slit_buildup",
    "analyze": "born_deviation",
    "matterwave": "matterwave_sweep",
    "spin": "spin_check",
    "compton": "compton_sweep",
    "packet": "packet_widths",
    "xsec": "xsec",
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wavequanta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, experiment in SUBCOMMANDS.items():
        sp = sub.add_parser(name, help=f"run the {experiment} experiment")
        sp.add_argument("--config", type=Path, help="JSON run config")
        sp.add_argument("--seed", type=int, help="override the config seed (unsigned 64-bit)")
        sp.add_argument("--out", type=Path, help="output directory")
        sp.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    return parser


def _failing_op(exc: BaseException) -> str:
    frames = [f for f in traceback.extract_tb(exc.__traceback__) if "wavequanta" in f.filename]
    if not frames:
        return "unknown"
    last = frames[-1]
    return f"{Path(last.filename).stem}.{last.name}"


def _resolve(args) -> tuple[RunConfig, Path, str | None]:
    experiment = SUBCOMMANDS[args.command]
    if args.config is not None:
        cfg = load_config(args.config)
        if cfg.experiment != experiment:
            raise ConfigError(
                f"config experiment {cfg.experiment!r} does not match subcommand {args.command!r}"
            )
    else:
        cfg = build_config({"experiment": experiment})
    if args.seed is not None:
        cfg = build_config({**cfg.as_dict(), "seed": args.seed}, source=cfg.source)
    if args.threads < 1:
        raise ConfigError(f"--threads must be >= 1, got {args.threads}")
    env_out = os.environ.get(OUT_ENV)
    out = args.out or (Path(cfg.output_dir) if cfg.output_dir else None) or (Path(env_out) if env_out else None)
    if out is None:
        out = Path("wavequanta_out") / args.command
    return cfg, out, env_out


def run(cfg: RunConfig, out: Path, *, threads: int = 1, env_out: str | None = None) -> dict:
    """Execute one experiment, write its artifacts and ``report.json``."""
    out.mkdir(parents=True, exist_ok=True)
    start = time.perf_counter()
    results = DRIVERS[cfg.experiment](cfg, out, threads)
    report = {
        "package_version": __version__,
        "config": cfg.as_dict(),
        "config_source": cfg.source,
        "seed": cfg.seed,
        "constants": CONSTANTS.as_dict(),
        "environment": {
            OUT_ENV: env_out,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "threads": threads,
        },
        "results": results,
        "wall_clock_s": time.perf_counter() - start,
    }
    (out / "report.json").write_text(json.dumps(report, indent=2, default=float) + "\n")
    return report


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg, out, env_out = _resolve(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    try:
        run(cfg, out, threads=args.threads, env_out=env_out)
    except ConfigError as exc:
        print(f"config error in {_failing_op(exc)}: {exc}", file=sys.stderr)
        return 1
    except (DomainError, ArithmeticError, FloatingPointError) as exc:
        print(f"numeric error in {_failing_op(exc)}: {exc}", file=sys.stderr)
        return 2
    print(out / "report.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
