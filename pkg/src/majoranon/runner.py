"""Run orchestration behind ``sim run`` and ``sim compare``."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from majoranon import io, plotting
from majoranon.config import ExperimentConfig
from majoranon.errors import ContractViolationError
from majoranon.evolvers import make_evolver, parallel_map
from majoranon.fields import GridSpec, SpinorField, gaussian_spinor, total_intensity
from majoranon.observables import (
    ObservableSeries,
    first_minimum,
    map_from_states,
    oscillation_amplitude,
    pseudo_energy_series,
    series_from_states,
)

log = logging.getLogger(__name__)

NORM_GUARD = 1e-9


def initial_spinor(cfg: ExperimentConfig) -> SpinorField:
    """Wavepacket with only the first component populated."""
    return gaussian_spinor(GridSpec(cfg.n_cells), cfg.n0, cfg.sigma, cfg.p0, 1.0, 0.0)


def _prepare(out_dir) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc.strerror or exc}") from exc
    return out


def _check_norms(states, label: str) -> None:
    worst = max(abs(total_intensity(s) - 1.0) for s in states)
    if worst > NORM_GUARD:
        raise ContractViolationError(f"{label}: norm drift {worst:.3e} exceeds {NORM_GUARD:g}")


def run_experiment(cfg: ExperimentConfig, out_dir) -> dict:
    """Evolve the configured packet over ``cfg.zeta_samples`` and write the requested outputs."""
    out = _prepare(out_dir)
    psi0 = initial_spinor(cfg)
    evolver = make_evolver(cfg.evolver, cfg.mu, cfg.n_cells, cfg.model, cfg.kappa, cfg.reference_step)
    zetas = np.asarray(cfg.zeta_samples, dtype=float)
    log.info("evolving %s over %d samples", evolver.name, zetas.size)
    states = evolver.evolve_many(psi0, list(zetas))
    _check_norms(states, evolver.name)
    series = series_from_states(zetas, states, cfg.kappa)
    files = []

    if "pseudo_energy" in cfg.outputs:
        files.append(io.write_series_csv(series, out / "pseudo_energy.csv", ["pseudo_energy"]))
    if "centroid_width" in cfg.outputs:
        files.append(io.write_series_csv(series, out / "centroid_width.csv", ["centroid", "rms_width"]))
    if "map" in cfg.outputs:
        imap = map_from_states(zetas, states)
        files.append(io.write_map_csv(zetas, imap.comp1, out / "map_psi1.csv"))
        files.append(io.write_map_csv(zetas, imap.comp2, out / "map_psi2.csv"))
        files.append(io.write_map_csv(zetas, imap.sites, out / "map_sites.csv"))
        files.append(io.render_heatmap(imap.comp1, out / "map_psi1.ppm", cfg.colormap))
        files.append(io.render_heatmap(imap.comp2, out / "map_psi2.ppm", cfg.colormap))
        if cfg.figures:
            files.append(plotting.plot_component_maps(zetas, imap.comp1, imap.comp2, out / "maps.png", cfg.measure_zetas))
    measure = list(cfg.measure_zetas) or [float(zetas[-1])]
    measured = evolver.evolve_many(psi0, measure)
    _check_norms(measured, evolver.name)
    mmap = map_from_states(measure, measured)
    if "intensities" in cfg.outputs:
        files.append(io.write_map_csv(measure, mmap.sites, out / "intensities.csv"))
        if cfg.figures:
            files.append(plotting.plot_profiles(measure, mmap.comp1, mmap.comp2, out / "profiles.png"))
    if "pseudo_energy" in cfg.outputs and cfg.figures:
        files.append(
            plotting.plot_pseudo_energy_single(
                zetas, series.values["pseudo_energy"], out / "pseudo_energy.png", evolver.name, cfg.measure_zetas
            )
        )

    mseries = series_from_states(measure, measured, cfg.kappa)
    return {
        "evolver": evolver.name,
        "files": [str(f) for f in files],
        "measurements": [
            {
                "zeta": float(z),
                "Z_mm": float(z / cfg.kappa),
                "pseudo_energy": float(mseries.values["pseudo_energy"][i]),
                "rms_width": float(mseries.values["rms_width"][i]),
            }
            for i, z in enumerate(measure)
        ],
    }


def run_compare(cfg: ExperimentConfig, out_dir, zeta_max: float = 5.0, zeta_step: float = 0.01) -> dict:
    """Majoranon vs Dirac pseudo-energy for the same initial spinor.

    Spinor configs use the spectral evolvers; lattice and device configs use the
    chip (two-plane device for the Majoranon, a single AB array for Dirac).
    """
    out = _prepare(out_dir)
    psi0 = initial_spinor(cfg)
    n = int(np.floor(zeta_max / zeta_step + 1e-9))
    zetas = np.array([round(i * zeta_step, 12) for i in range(n + 1)])
    on_chip = cfg.model in ("lattice", "device")
    evolvers = [
        make_evolver("majorana_composed", cfg.mu, cfg.n_cells, "device" if on_chip else "spinor", cfg.kappa),
        make_evolver("dirac_plus", cfg.mu, cfg.n_cells, "lattice" if on_chip else "spinor", cfg.kappa),
    ]
    maj, dirac = parallel_map(lambda ev: pseudo_energy_series(ev, psi0, zetas, cfg.kappa), evolvers)
    combined = ObservableSeries(
        zeta=zetas,
        kappa=cfg.kappa,
        values={"majoranon": maj.values["pseudo_energy"], "dirac": dirac.values["pseudo_energy"]},
    )
    files = [io.write_series_csv(combined, out / "compare_pseudo_energy.csv")]
    if cfg.figures:
        files.append(
            plotting.plot_pseudo_energy(
                zetas,
                combined.values["majoranon"],
                combined.values["dirac"],
                out / "compare_pseudo_energy.png",
                cfg.measure_zetas,
                title=rf"$\mu = {cfg.mu:g}$",
            )
        )
    return {
        "files": [str(f) for f in files],
        "majoranon_amplitude": oscillation_amplitude(combined.values["majoranon"]),
        "dirac_amplitude": oscillation_amplitude(combined.values["dirac"]),
        "majoranon_first_minimum": first_minimum(zetas, combined.values["majoranon"]),
    }
