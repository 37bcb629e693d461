"""Experiment drivers behind the command-line interface.

Each driver writes its artifacts under ``out`` and returns the
experiment-specific part of ``report.json``.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import rng
from .analysis import (
    average_histograms,
    expected_count,
    goodness_of_fit,
    histogram,
    theoretical_curve,
)
from .compton import ComptonInput, compton_shift, solve
from .config import RunConfig
from .detector import ExposureSchedule, generate_screen, run_exposure
from .errors import FitError
from .export import read_spinor_grid, render_pgm, write_csv, write_vector_field
from .fields import DoubleSlitField, FringeGeometry
from .matterwave import PlaneWaveState, plane_wave_densities
from .physconst import CONSTANTS
from .rates import hydrogen_excitation_cross_section, rate_coefficient
from .spinor import current_on_grid, pointwise_densities
from .wavepacket import build_packet, rms_widths, time_frequency_widths

HIST_HEADER = ["bin_center", "count", "normalized", "theory_tau", "theory_born"]


def _fit_dict(hist, curve):
    try:
        fit = goodness_of_fit(hist, curve)
    except FitError:
        return None
    return {"rmse": fit.rmse, "chi_square": fit.chi_square, "dof": fit.dof,
            "chi_square_per_dof": fit.reduced_chi_square}


def _screen(p: dict, seed: int):
    lz, ly = p["window"]
    if p["count"] is not None:
        return generate_screen(lz, ly, count=p["count"], seed=seed)
    return generate_screen(lz, ly, density=p["density"], seed=seed)


def _field(p: dict) -> DoubleSlitField:
    lz = p["window"][0]
    return DoubleSlitField(FringeGeometry(p["c1"], p["r"]), window=(-lz / 2, lz / 2))


def _write_histogram(path: Path, hist, field, tau: float) -> dict:
    centers = hist.centers
    theory = theoretical_curve(field, tau, centers)
    born = theoretical_curve(field, 0.0, centers)
    write_csv(path, HIST_HEADER, zip(centers, hist.counts, hist.normalized, theory, born))
    return {"fit_theory_tau": _fit_dict(hist, theory), "fit_born": _fit_dict(hist, born)}


def _exposed_histograms(p: dict, seed: int, taus, threads: int):
    """Run every realization; return per-realization (screen, snapshots)."""
    field = _field(p)
    schedule = ExposureSchedule(tuple(taus))
    runs = []
    for r in range(p["realizations"]):
        screen = _screen(p, seed + r)
        snaps = run_exposure(screen, field, schedule, p["mode"], dtau=p["dtau"], threads=threads)
        runs.append((screen, snaps))
    return field, runs


def double_slit_buildup(cfg: RunConfig, out: Path, threads: int = 1) -> dict:
    p = cfg.parameters
    lz, ly = p["window"]
    zwin = (-lz / 2, lz / 2)
    field, runs = _exposed_histograms(p, cfg.seed, p["exposures"], threads)
    screen0, snaps0 = runs[0]

    write_csv(
        out / "snapshots.csv", ["tau", "z", "y"],
        ((s.tau, z, y) for s in snaps0 for z, y in s.excited_positions),
    )
    write_csv(
        out / "buildup.csv", ["tau", "observed_count", "expected_count"],
        ((s.tau, s.count, expected_count(field, screen0, s.tau)) for s in snaps0),
    )
    snapshots = []
    for i, snap in enumerate(snaps0):
        (out / f"snapshot_{i:02d}.pgm").write_bytes(
            render_pgm(snap, (lz, ly), p["pixels_per_unit"])
        )
        hists = [histogram(snaps[i], zwin, p["bins"]) for _, snaps in runs]
        hist = hists[0] if len(hists) == 1 else average_histograms(hists)
        fits = _write_histogram(out / f"histogram_{i:02d}.csv", hist, field, snap.tau)
        snapshots.append({
            "tau": snap.tau,
            "counts": [snaps[i].count for _, snaps in runs],
            "expected_count": expected_count(field, screen0, snap.tau),
            **fits,
        })
    return {"atoms": screen0.size, "snapshots": snapshots}


def born_deviation(cfg: RunConfig, out: Path, threads: int = 1) -> dict:
    p = cfg.parameters
    lz = p["window"][0]
    tau = p["tau"]
    field, runs = _exposed_histograms(p, cfg.seed, [tau], threads)
    hists = [histogram(snaps[0], (-lz / 2, lz / 2), p["bins"]) for _, snaps in runs]
    hist = average_histograms(hists)
    fits = _write_histogram(out / "histogram.csv", hist, field, tau)
    z = np.linspace(-lz / 2, lz / 2, 20001)
    gap = float(np.max(np.abs(theoretical_curve(field, tau, z) - theoretical_curve(field, 0.0, z))))
    return {
        "tau": tau,
        "counts": [snaps[0].count for _, snaps in runs],
        "max_theory_gap": gap,
        **fits,
    }


def matterwave_sweep(cfg: RunConfig, out: Path, threads: int = 1) -> dict:
    p = cfg.parameters
    cst = CONSTANTS
    ratios = np.linspace(p["ck_min"], p["ck_max"], p["points"])
    rows = []
    for x in ratios:
        k = np.array([x * cst.omega_e / cst.c, 0.0, 0.0])
        state = PlaneWaveState(u_amp=math.sqrt(p["u_abs2"]), k_vec=k)
        d = plane_wave_densities(state)
        rows.append((x, state.omega / cst.omega_e, d.rho / cst.e_charge, d.W / (cst.hbar * cst.omega_e)))
    write_csv(out / "matterwave.csv",
              ["ck_over_omega_e", "omega_over_omega_e", "rho_over_e", "W_over_hbar_omega_e"], rows)
    return {"points": len(rows)}


def spin_check(cfg: RunConfig, out: Path, threads: int = 1) -> dict:
    p = cfg.parameters
    cst = CONSTANTS
    n = p["samples"]
    idx = np.arange(n, dtype=np.uint64)
    a, b = rng.uniform_pair(cfg.seed, idx, 0, rng.STREAM_MISC)
    c, d = rng.uniform_pair(cfg.seed, idx, 1, rng.STREAM_MISC)
    chi = np.stack([(a - 0.5) + 1j * (b - 0.5), (c - 0.5) + 1j * (d - 0.5)], axis=-1)
    dens = pointwise_densities(chi)
    s_len = np.linalg.norm(dens.S_vec, axis=-1)
    gyro = np.max(np.abs(dens.m_vec - cst.gamma_e * dens.s_vec), axis=-1) / np.linalg.norm(dens.m_vec, axis=-1)
    report = {
        "samples": n,
        "max_abs_S_minus_half_hbar_over_hbar": float(np.max(np.abs(s_len - cst.hbar / 2)) / cst.hbar),
        "max_gyromagnetic_residual": float(np.max(gyro)),
    }
    if p["grid_csv"]:
        grid = read_spinor_grid(p["grid_csv"], spacing=p["spacing"])
        cur = current_on_grid(grid, periodic=p["periodic"])
        write_vector_field(out / "current_total.csv", cur.j_total)
        write_vector_field(out / "current_convective.csv", cur.j_convective)
        write_vector_field(out / "current_spin.csv", cur.j_spin)
        report["grid_shape"] = list(grid.shape)
    return report


def compton_sweep(cfg: RunConfig, out: Path, threads: int = 1) -> dict:
    p = cfg.parameters
    cst = CONSTANTS
    mc2 = cst.m_e * cst.c**2
    omega0 = p["hbar_omega0_over_mc2"] * mc2 / cst.hbar
    p0 = np.asarray(p["p0_over_mc"], dtype=float) * cst.m_e * cst.c
    k0_dir = np.array([0.0, 0.0, 1.0])
    rows = []
    max_res = 0.0
    for theta in np.linspace(0.0, math.pi, p["theta_points"]):
        n_dir = np.array([math.sin(theta), 0.0, math.cos(theta)])
        res = solve(ComptonInput(omega0, k0_dir, p0, n_dir))
        dlam = 2.0 * math.pi * cst.c * (1.0 / res.omega - 1.0 / omega0)
        rows.append((theta, res.omega / omega0, dlam, res.energy_residual))
        max_res = max(max_res, res.energy_residual, res.momentum_residual)
    write_csv(out / "compton.csv", ["theta_rad", "omega_over_omega0", "delta_lambda_m", "energy_residual"], rows)
    lam0 = 2.0 * math.pi * cst.c / omega0
    return {
        "points": len(rows),
        "max_residual": max_res,
        "compton_shift_at_half_pi_m": compton_shift(lam0, math.pi / 2),
    }


def packet_widths(cfg: RunConfig, out: Path, threads: int = 1) -> dict:
    p = cfg.parameters
    rows = []
    for value in p["values"]:
        kw = {"sigma": value} if p["shape"] == "gaussian" else {"width": value}
        packet = build_packet(p["shape"], p["n"], p["extent"], k_c=p["k_c"], axis=p["axis"], **kw)
        if p["axis"] == "space":
            w = rms_widths(packet)
            rows.append((value, w.delta_x, w.delta_k, w.product, w.eps_grid))
        else:
            w = time_frequency_widths(packet)
            rows.append((value, w.delta_t, w.delta_omega, w.product, w.eps_grid))
    write_csv(out / "packet.csv", ["param", "delta_x", "delta_k", "product", "eps_grid"], rows)
    return {"min_product": min(r[3] for r in rows)}


def xsec(cfg: RunConfig, out: Path, threads: int = 1) -> dict:
    p = cfg.parameters
    rows = []
    for v2 in p["v2"]:
        v = math.sqrt(v2)
        sigma = hydrogen_excitation_cross_section(v)
        rows.append((v2, sigma, rate_coefficient(sigma, v, p["n0"])))
    write_csv(out / "xsec.csv", ["v2", "sigma2", "b"], rows)
    return {"points": len(rows)}


DRIVERS = {
    "double_slit_buildup": double_slit_buildup,
    "born_deviation": born_deviation,
    "matterwave_sweep": matterwave_sweep,
    "spin_check": spin_check,
    "compton_sweep": compton_sweep,
    "packet_widths": packet_widths,
    "xsec": xsec,
}

