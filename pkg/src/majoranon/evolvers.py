"""Named evolution routes ``(psi0, zeta) -> psi(zeta)`` shared by observables and the CLI."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from majoranon.device import DeviceSpec, simulate_device
from majoranon.errors import ConfigError
from majoranon.fields import GridSpec, SpinorField
from majoranon.lattice import BinaryLattice, Ordering, lattice_dirac_evolve
from majoranon.relativistic import (
    DimensionlessParams,
    MassSign,
    dirac_evolve,
    majorana_evolve_composed,
    majorana_evolve_reference_many,
)

SPINOR_EVOLVERS = ("dirac_plus", "dirac_minus", "majorana_composed", "majorana_reference")
LATTICE_EVOLVERS = ("dirac_plus", "dirac_minus")
DEVICE_EVOLVERS = ("majorana_composed",)
MODELS = {"spinor": SPINOR_EVOLVERS, "lattice": LATTICE_EVOLVERS, "device": DEVICE_EVOLVERS}


def thread_count() -> int:
    raw = os.environ.get("SIM_THREADS")
    if raw is None or raw.strip() == "":
        return min(4, os.cpu_count() or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"SIM_THREADS must be an integer, got {raw!r}") from None


def parallel_map(fn: Callable, items: list) -> list:
    """Order-preserving map; fans out to ``SIM_THREADS`` workers."""
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class Evolver:
    name: str
    step: Callable[[SpinorField, float], SpinorField]
    batch: Optional[Callable[[SpinorField, list], list]] = None

    def __call__(self, psi: SpinorField, zeta: float) -> SpinorField:
        return self.step(psi, zeta)

    def evolve_many(self, psi: SpinorField, zetas: list) -> list:
        if self.batch is not None:
            return self.batch(psi, list(zetas))
        return parallel_map(lambda z: self.step(psi, z), list(zetas))


def make_evolver(
    name: str,
    mu: float,
    n_cells: int,
    model: str = "spinor",
    kappa: float = 1.0,
    reference_step: float = 1e-3,
    momentum: str = "spectral",
) -> Evolver:
    """Build the evolver ``name`` for the given model.

    ``spinor`` evolves on a periodic grid of ``n_cells``; ``lattice`` emulates the
    Dirac evolvers on a single ``2 n_cells``-site array; ``device`` runs the full
    two-plane chip, which only realises the composed Majoranon.
    """
    if model not in MODELS:
        raise ConfigError(f"unknown model {model!r}")
    if name not in MODELS[model]:
        raise ConfigError(f"evolver {name!r} is not available for model {model!r}")
    label = f"{model}:{name}"

    if model == "spinor":
        grid = GridSpec(n_cells)
        if name in ("dirac_plus", "dirac_minus"):
            sign = MassSign.PLUS if name == "dirac_plus" else MassSign.MINUS
            return Evolver(label, lambda psi, z: dirac_evolve(psi, sign, DimensionlessParams(mu, z), grid, momentum))
        if name == "majorana_composed":
            return Evolver(label, lambda psi, z: majorana_evolve_composed(psi, DimensionlessParams(mu, z), grid, momentum))

        def batch(psi, zetas):
            return majorana_evolve_reference_many([psi], mu, zetas, grid, reference_step)[0]

        return Evolver(label, lambda psi, z: batch(psi, [z])[0], batch)

    if model == "lattice":
        ordering = Ordering.AB if name == "dirac_plus" else Ordering.BA
        lat = BinaryLattice(2 * n_cells, kappa, mu * kappa, ordering)
        return Evolver(label, lambda psi, z: lattice_dirac_evolve(lat, psi, z))

    def through_device(psi, z):
        spec = DeviceSpec.from_parameters(2 * n_cells, kappa, mu * kappa, z / kappa)
        return simulate_device(spec, psi).majoranon()

    def device_many(psi, zetas):
        # a zero-length chip is not a valid DeviceSpec; splitter plus coupler alone return psi
        return parallel_map(lambda z: psi if z == 0 else through_device(psi, z), zetas)

    return Evolver(label, lambda psi, z: device_many(psi, [z])[0], device_many)
