"""Oracle and invariant checks behind ``sim validate`` and the acceptance tests.

Each check returns a ``CriterionResult``; thresholds are fixed here and are not
configurable.  The checks only use public library entry points.
"""

from __future__ import annotations

import contextlib
import io
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from scipy.special import jv

from majoranon.config import preset_config
from majoranon.device import DeviceSpec, simulate_device
from majoranon.fields import GridSpec, LatticeField, SpinorField, gaussian_spinor, normalize, total_intensity
from majoranon.lattice import BinaryLattice, Ordering, decode_lattice_intensity, encode_spinor_to_lattice, lattice_evolve
from majoranon.observables import (
    first_minimum,
    oscillation_amplitude,
    pseudo_energy,
    pseudo_energy_series,
    rms_width,
    total_variation,
)
from majoranon.relativistic import (
    DimensionlessParams,
    MassSign,
    decompose_majoranon,
    dirac_evolve,
    majorana_evolve_composed,
    majorana_evolve_reference_many,
)
from majoranon.runner import initial_spinor

SEED = 20240611
PRESETS = ("lowmass", "highmass")


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:>2} {self.name}: {self.detail}"


def random_spinors(n_cells: int, count: int, seed: int = SEED) -> list[SpinorField]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        z = rng.standard_normal((2, n_cells)) + 1j * rng.standard_normal((2, n_cells))
        out.append(normalize(SpinorField.from_array(z)))
    return out


def _max_dev(a: SpinorField, b: SpinorField) -> float:
    return float(np.max(np.abs(a.as_array() - b.as_array())))


def check_composition() -> CriterionResult:
    n, zetas, tol = 64, [0.5, 2.0, 5.0], 1e-8
    grid = GridSpec(n)
    states = random_spinors(n, 20)
    worst = 0.0
    for mu in (0.0, 0.65, 1.2):
        ref = majorana_evolve_reference_many(states, mu, zetas, grid, 1e-3)
        for psi, row in zip(states, ref):
            for z, r in zip(zetas, row):
                worst = max(worst, _max_dev(majorana_evolve_composed(psi, DimensionlessParams(mu, z), grid), r))
    return CriterionResult(1, "composition theorem", worst <= tol, worst, tol, f"max |composed - reference| = {worst:.2e} (<= {tol:g})")


def check_analytic_p0() -> CriterionResult:
    n = 16
    grid = GridSpec(n)
    psi = normalize(SpinorField(np.ones(n), np.zeros(n)))
    zetas = [round(0.05 * i, 12) for i in range(101)]
    maj_err = dirac_err = 0.0
    for mu in (0.65, 1.2):
        for z in zetas:
            p = DimensionlessParams(mu, z)
            maj_err = max(maj_err, abs(pseudo_energy(majorana_evolve_composed(psi, p, grid)) - math.cos(2 * mu * z)))
            dirac_err = max(dirac_err, abs(pseudo_energy(dirac_evolve(psi, MassSign.PLUS, p, grid)) - 1.0))
    ok = maj_err <= 1e-9 and dirac_err <= 1e-10
    return CriterionResult(
        2, "analytic p=0 laws", ok, max(maj_err, dirac_err), 1e-9,
        f"|<sz> - cos 2 mu zeta| = {maj_err:.1e} (<= 1e-9), |Dirac <sz> - 1| = {dirac_err:.1e} (<= 1e-10)",
    )


def check_unitarity() -> CriterionResult:
    exact_err = rk4_err = 0.0
    for name in PRESETS:
        cfg = preset_config(name)
        grid = GridSpec(cfg.n_cells)
        psi0 = initial_spinor(cfg)
        plus, minus = decompose_majoranon(psi0)
        zetas = list(cfg.measure_zetas) + [5.0]
        for z in zetas:
            p = DimensionlessParams(cfg.mu, z)
            for part, sign in ((plus, MassSign.PLUS), (minus, MassSign.MINUS)):
                out = dirac_evolve(part, sign, p, grid)
                exact_err = max(exact_err, abs(total_intensity(out) - total_intensity(part)))
            exact_err = max(exact_err, abs(total_intensity(majorana_evolve_composed(psi0, p, grid)) - 1.0))
            for ordering in Ordering:
                lat = BinaryLattice(cfg.n_sites, cfg.kappa, cfg.beta, ordering)
                a0 = encode_spinor_to_lattice(psi0)
                exact_err = max(exact_err, abs(total_intensity(lattice_evolve(lat, a0, z / cfg.kappa)) - 1.0))
                rk = lattice_evolve(lat, a0, z / cfg.kappa, method="rk4")
                rk4_err = max(rk4_err, abs(total_intensity(rk) - 1.0))
            res = simulate_device(DeviceSpec.from_parameters(cfg.n_sites, cfg.kappa, cfg.beta, z / cfg.kappa), psi0)
            out_total = total_intensity(res.out_upper) + total_intensity(res.out_lower)
            exact_err = max(exact_err, abs(out_total - total_intensity(res.encoded.beam)))
        ref = majorana_evolve_reference_many([psi0], cfg.mu, zetas, grid, cfg.reference_step)[0]
        rk4_err = max(rk4_err, max(abs(total_intensity(s) - 1.0) for s in ref))
    ok = exact_err <= 1e-10 and rk4_err <= 1e-6
    return CriterionResult(
        3, "unitarity", ok, exact_err, 1e-10,
        f"spectral/eigen/device drift {exact_err:.1e} (<= 1e-10), rk4 drift {rk4_err:.1e} (<= 1e-6)",
    )


def _single_site(k: int, site: int) -> LatticeField:
    a = np.zeros(k, dtype=complex)
    a[site - 1] = 1.0
    return LatticeField(a)


def check_lattice_oracle() -> CriterionResult:
    kappa, z = 1.0, 2.0
    small = BinaryLattice(41, kappa, 0.0)
    big = BinaryLattice(401, kappa, 0.0)
    i_small = lattice_evolve(small, _single_site(41, 21), z).intensities()
    i_big = lattice_evolve(big, _single_site(401, 201), z).intensities()[180:221]
    offsets = np.arange(1, 42) - 21
    # single-site excitation: a_n = i^n J_n(2 kappa Z)
    bessel = jv(offsets, 2.0 * kappa * z) ** 2
    err_bessel = float(np.max(np.abs(i_small - bessel)))
    err_big = float(np.max(np.abs(i_small - i_big)))
    pair = BinaryLattice(2, kappa, 0.0)
    err_pair = 0.0
    for zz in np.linspace(0.0, 3.0, 31):
        i1 = lattice_evolve(pair, _single_site(2, 1), zz).intensities()[0]
        err_pair = max(err_pair, abs(i1 - math.cos(kappa * zz) ** 2))
    ok = err_bessel <= 1e-6 and err_big <= 1e-6 and err_pair <= 1e-10
    return CriterionResult(
        4, "lattice oracle", ok, max(err_bessel, err_big), 1e-6,
        f"Bessel {err_bessel:.1e}, K=401 {err_big:.1e} (<= 1e-6); coupler cos^2 {err_pair:.1e} (<= 1e-10)",
    )


def check_dirac_limit() -> CriterionResult:
    n, mu, tol = 32, 0.65, 0.05
    grid = GridSpec(n)
    psi0 = gaussian_spinor(grid, (n + 1) / 2, 4.0)
    lat = BinaryLattice(2 * n, 1.0, mu)
    a0 = encode_spinor_to_lattice(psi0)
    worst = 0.0
    for z in np.arange(0.0, 4.4 + 1e-9, 0.1):
        lattice_i = decode_lattice_intensity(lattice_evolve(lat, a0, z))
        spectral_i = dirac_evolve(psi0, MassSign.PLUS, DimensionlessParams(mu, z), grid).intensities()
        worst = max(worst, total_variation(lattice_i, spectral_i))
    return CriterionResult(5, "Dirac-limit lattice", worst <= tol, worst, tol, f"max TV = {worst:.4f} (<= {tol:g})")


def _composed_state(cfg, z: float) -> SpinorField:
    return majorana_evolve_composed(initial_spinor(cfg), DimensionlessParams(cfg.mu, z), GridSpec(cfg.n_cells))


def check_signs_and_spreading() -> CriterionResult:
    low, high = preset_config("lowmass"), preset_config("highmass")
    pe = {(c.preset, z): pseudo_energy(_composed_state(c, z)) for c in (low, high) for z in c.measure_zetas}
    w_low = [rms_width(_composed_state(low, z)) for z in low.measure_zetas]
    w_high_late = rms_width(_composed_state(high, high.measure_zetas[-1]))
    signs = all(pe[("lowmass", z)] > 0 for z in low.measure_zetas) and all(
        pe[("highmass", z)] < 0 for z in high.measure_zetas
    )
    spread = w_low[1] > w_low[0] and w_low[1] > w_high_late
    pes = ", ".join(f"{k[0]}@{k[1]:g}={v:+.3f}" for k, v in pe.items())
    detail = f"<sz>: {pes}; width lowmass {w_low[0]:.3f}->{w_low[1]:.3f}, highmass late {w_high_late:.3f}"
    return CriterionResult(6, "signs and spreading", signs and spread, float(min(abs(v) for v in pe.values())), 0.0, detail)


def _compare_series(cfg):
    zetas = [round(0.01 * i, 12) for i in range(501)]
    grid = GridSpec(cfg.n_cells)
    psi0 = initial_spinor(cfg)
    maj = pseudo_energy_series(lambda p, z: majorana_evolve_composed(p, DimensionlessParams(cfg.mu, z), grid), psi0, zetas)
    dirac = pseudo_energy_series(lambda p, z: dirac_evolve(p, MassSign.PLUS, DimensionlessParams(cfg.mu, z), grid), psi0, zetas)
    return zetas, maj.values["pseudo_energy"], dirac.values["pseudo_energy"]


def _fmt(x: Optional[float]) -> str:
    return "none" if x is None else f"{x:.3f}"


def check_mass_dependence() -> CriterionResult:
    stats = {}
    for name in PRESETS:
        zetas, maj, dirac = _compare_series(preset_config(name))
        stats[name] = (oscillation_amplitude(dirac), oscillation_amplitude(maj), first_minimum(zetas, maj))
    d_low, m_low, min_low = stats["lowmass"]
    d_high, m_high, min_high = stats["highmass"]
    rel = abs(m_high - m_low) / m_low
    dirac_ok = d_high < d_low
    maj_ok = rel < 0.10
    freq_ok = min_low is not None and min_high is not None and min_high < min_low
    detail = (
        f"Dirac amplitude {d_low:.3f}->{d_high:.3f} ({'ok' if dirac_ok else 'bad'}); "
        f"Majoranon amplitude {m_low:.3f}->{m_high:.3f}, change {100 * rel:.1f}% (< 10%: {'ok' if maj_ok else 'bad'}); "
        f"first minimum {_fmt(min_low)}->{_fmt(min_high)} ({'ok' if freq_ok else 'bad'})"
    )
    return CriterionResult(7, "mass dependence", dirac_ok and maj_ok and freq_ok, rel, 0.10, detail)


def check_device() -> CriterionResult:
    tol = 0.08
    worst_tv = cons = theta0 = 0.0
    parts = []
    for name in PRESETS:
        cfg = preset_config(name)
        psi0 = initial_spinor(cfg)
        for z in cfg.measure_zetas:
            spec = DeviceSpec.from_parameters(cfg.n_sites, cfg.kappa, cfg.beta, z / cfg.kappa)
            res = simulate_device(spec, psi0)
            tv = total_variation(res.decoded, _composed_state(cfg, z).intensities())
            worst_tv = max(worst_tv, tv)
            parts.append(f"{name}@{z:g} TV={tv:.3f}")
            out_total = total_intensity(res.out_upper) + total_intensity(res.out_lower)
            cons = max(cons, abs(out_total - total_intensity(res.encoded.beam)))

            bare = DeviceSpec.from_parameters(cfg.n_sites, cfg.kappa, cfg.beta, z / cfg.kappa, coupler_theta=0.0)
            r0 = simulate_device(bare, psi0)
            up = lattice_evolve(bare.lattice_upper, r0.encoded.upper, bare.effective_length_mm)
            lo = lattice_evolve(bare.lattice_lower, r0.encoded.lower, bare.effective_length_mm)
            theta0 = max(theta0, float(np.max(np.abs(r0.out_upper.amps - up.amps))), float(np.max(np.abs(r0.out_lower.amps - lo.amps))))
    ok = worst_tv <= tol and cons <= 1e-10 and theta0 == 0.0
    detail = f"{', '.join(parts)} (<= {tol:g}); conservation {cons:.1e} (<= 1e-10); theta=0 mismatch {theta0:.1e} (== 0)"
    return CriterionResult(8, "device end-to-end", ok, worst_tv, tol, detail)


def check_convergence() -> CriterionResult:
    n, mu, zeta = 32, 0.9, 1.0
    grid = GridSpec(n)
    psi = random_spinors(n, 1, SEED + 1)[0]
    exact = majorana_evolve_composed(psi, DimensionlessParams(mu, zeta), grid)
    errs = [_max_dev(majorana_evolve_reference_many([psi], mu, [zeta], grid, h)[0][0], exact) for h in (0.1, 0.05, 0.025)]
    ratios = [errs[i] / errs[i + 1] for i in range(2)]
    worst = min(ratios)
    detail = f"errors {', '.join(f'{e:.2e}' for e in errs)}; ratios {', '.join(f'{r:.1f}' for r in ratios)} (>= 12)"
    return CriterionResult(9, "RK4 convergence", worst >= 12.0, worst, 12.0, detail)


@contextlib.contextmanager
def _threads(value: str):
    old = os.environ.get("SIM_THREADS")
    os.environ["SIM_THREADS"] = value
    try:
        yield
    finally:
        if old is None:
            del os.environ["SIM_THREADS"]
        else:
            os.environ["SIM_THREADS"] = old


def check_determinism() -> CriterionResult:
    from majoranon.cli import main

    args = ["run", "--preset", "lowmass", "--model", "device", "--zeta-step", "0.25", "--no-figures"]
    snapshots = []
    with tempfile.TemporaryDirectory() as tmp:
        for i, threads in enumerate(("1", "4", "4")):
            out = Path(tmp) / f"run{i}"
            with _threads(threads), contextlib.redirect_stdout(io.StringIO()):
                code = main([*args, "--out", str(out)])
            if code != 0:
                return CriterionResult(10, "determinism", False, float(code), 0.0, f"sim run exited with {code}")
            snapshots.append({p.name: p.read_bytes() for p in sorted(out.glob("*.csv"))})
    same = bool(snapshots[0]) and all(s == snapshots[0] for s in snapshots[1:])
    detail = f"{len(snapshots[0])} CSV files, SIM_THREADS=1 vs 4 vs 4: {'identical' if same else 'differ'}"
    return CriterionResult(10, "determinism", same, 0.0 if same else 1.0, 0.0, detail)


CHECKS: dict[int, Callable[[], CriterionResult]] = {
    1: check_composition,
    2: check_analytic_p0,
    3: check_unitarity,
    4: check_lattice_oracle,
    5: check_dirac_limit,
    6: check_signs_and_spreading,
    7: check_mass_dependence,
    8: check_device,
    9: check_convergence,
    10: check_determinism,
}


def run_all(numbers: Optional[list[int]] = None) -> list[CriterionResult]:
    return [CHECKS[k]() for k in (numbers or sorted(CHECKS))]


def format_table(results: list[CriterionResult]) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines)
