"""Spinor-level dynamics of the 1+1D Dirac and Majorana equations.

Conventions (dimensionless, unit cell spacing, evolution coordinate ``zeta``):

* Dirac:    ``i d/dzeta psi = (sigma_x p + s mu sigma_z) psi``, ``s = +1/-1``.
* Majorana: ``i d/dzeta psi = sigma_x p psi - i mu sigma_y psi*``.
* Charge conjugation ``psi_c = -i sigma_z sigma_y psi*``, which acts cell-wise as
  ``(psi_1, psi_2) -> (-psi_2*, -psi_1*)``.

The Majorana equation is not complex-linear, but ``psi = psi_+ + i psi_-`` with
charge-conjugation-invariant parts turns it into two ordinary Dirac problems of
opposite mass.  ``majorana_evolve_composed`` uses that route;
``majorana_evolve_reference`` integrates the equation directly and is kept
independent of it on purpose.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from majoranon.errors import InvalidParameterError, ShapeError, UnsupportedBoundaryError
from majoranon.fields import Boundary, GridSpec, SpinorField
from majoranon.integrate import rk4

MOMENTUM_OPERATORS = ("spectral", "lattice")


class MassSign(enum.IntEnum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class DimensionlessParams:
    """Mass ``mu = beta / kappa`` and evolution coordinate ``zeta = kappa Z``."""

    mu: float
    zeta: float

    def __post_init__(self):
        for name in ("mu", "zeta"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise InvalidParameterError(f"{name} must be finite and >= 0, got {value!r}")

    @classmethod
    def from_physical(cls, beta: float, kappa: float, z_mm: float) -> "DimensionlessParams":
        if not kappa > 0:
            raise InvalidParameterError(f"kappa must be positive, got {kappa!r}")
        return cls(mu=beta / kappa, zeta=z_mm * kappa)

    def z_mm(self, kappa: float) -> float:
        return self.zeta / kappa


def charge_conjugate(psi: SpinorField) -> SpinorField:
    return SpinorField(-np.conj(psi.comp2), -np.conj(psi.comp1))


def decompose_majoranon(psi: SpinorField) -> tuple[SpinorField, SpinorField]:
    """Split ``psi`` into charge-conjugation-invariant ``(psi_plus, psi_minus)``."""
    psi_c = charge_conjugate(psi)
    a, ac = psi.as_array(), psi_c.as_array()
    return SpinorField.from_array((a + ac) / 2.0), SpinorField.from_array((a - ac) / 2j)


def compose_majoranon(psi_plus: SpinorField, psi_minus: SpinorField) -> SpinorField:
    if psi_plus.n_cells != psi_minus.n_cells:
        raise ShapeError(f"grid sizes differ: {psi_plus.n_cells} vs {psi_minus.n_cells}")
    return SpinorField.from_array(psi_plus.as_array() + 1j * psi_minus.as_array())


def dispersion(mu: float, q: float) -> tuple[float, float]:
    e = float(np.hypot(q, mu))
    return e, -e


def grid_momenta(n_cells: int) -> np.ndarray:
    """Periodic-grid momenta ``2 pi j / N`` in FFT order."""
    return 2.0 * np.pi * np.fft.fftfreq(n_cells)


def momentum_symbol(n_cells: int, momentum: str = "spectral") -> np.ndarray:
    """Off-diagonal entry ``h(q)`` of the per-mode kinetic matrix ``[[0, h], [h*, 0]]``.

    ``"spectral"`` gives ``h = q`` (exact ``sigma_x p``) except at the Nyquist mode of
    an even grid, where the symbol is zeroed: ``q = -pi`` has no ``+pi`` partner, and
    keeping it would break ``p* = -p`` and with it the charge-conjugation symmetry
    the Majoranon decomposition relies on.  ``"lattice"`` gives the
    nearest-neighbour coupling of a binary waveguide array with a pi/2 phase
    gradient, ``h = 2 sin(q/2) exp(-i q/2)``; it reproduces single-plane lattice
    dynamics exactly in the bulk but does not commute with charge conjugation, so
    it is only offered for Dirac-type evolution.
    """
    q = grid_momenta(n_cells)
    if momentum == "spectral":
        h = q.astype(np.complex128)
        if n_cells % 2 == 0:
            h[n_cells // 2] = 0.0
        return h
    if momentum == "lattice":
        return 2.0 * np.sin(q / 2.0) * np.exp(-0.5j * q)
    raise InvalidParameterError(f"unknown momentum operator {momentum!r}")


def _require_periodic(grid: GridSpec, psi: SpinorField) -> None:
    if grid.boundary is not Boundary.PERIODIC:
        raise UnsupportedBoundaryError("spectral propagation needs a periodic grid")
    if psi.n_cells != grid.n_cells:
        raise ShapeError(f"field has {psi.n_cells} cells, grid has {grid.n_cells}")


def dirac_evolve(
    psi: SpinorField,
    mass_sign: MassSign | int,
    params: DimensionlessParams,
    grid: GridSpec,
    momentum: str = "spectral",
) -> SpinorField:
    """Exact plane-wave propagation of the Dirac equation with mass ``s * mu``."""
    _require_periodic(grid, psi)
    s = int(MassSign(mass_sign))
    mu, zeta = params.mu, params.zeta
    h = momentum_symbol(grid.n_cells, momentum)
    energy = np.sqrt(np.abs(h) ** 2 + mu**2)
    # exp(-i H zeta) = cos(E zeta) - i sin(E zeta)/E * H, since H^2 = E^2
    c = np.cos(energy * zeta)
    sn = zeta * np.sinc(energy * zeta / np.pi)
    spec = np.fft.fft(psi.as_array(), axis=1)
    out = np.empty_like(spec)
    out[0] = (c - 1j * sn * s * mu) * spec[0] - 1j * sn * h * spec[1]
    out[1] = -1j * sn * np.conj(h) * spec[0] + (c + 1j * sn * s * mu) * spec[1]
    return SpinorField.from_array(np.fft.ifft(out, axis=1))


def majorana_evolve_composed(
    psi: SpinorField,
    params: DimensionlessParams,
    grid: GridSpec,
    momentum: str = "spectral",
) -> SpinorField:
    """Decompose, evolve the parts under opposite-mass Dirac equations, recompose."""
    _require_periodic(grid, psi)
    plus, minus = decompose_majoranon(psi)
    plus = dirac_evolve(plus, MassSign.PLUS, params, grid, momentum)
    minus = dirac_evolve(minus, MassSign.MINUS, params, grid, momentum)
    return compose_majoranon(plus, minus)


def _majorana_rhs_complex(psi: np.ndarray, mu: float, q: np.ndarray) -> np.ndarray:
    # d/dzeta psi = -i sigma_x p psi - mu sigma_y psi*
    p_psi = np.fft.ifft(q * np.fft.fft(psi, axis=-1), axis=-1)
    conj = np.conj(psi)
    out = np.empty_like(psi)
    out[0] = -1j * p_psi[1] - mu * (-1j * conj[1])
    out[1] = -1j * p_psi[0] - mu * (1j * conj[0])
    return out


@lru_cache(maxsize=32)
def majorana_real_generator(n_cells: int, mu: float) -> np.ndarray:
    """Real ``4N x 4N`` matrix ``M`` with ``d/dzeta [Re psi, Im psi] = M [Re psi, Im psi]``.

    Complex conjugation is linear over the reals, so the Majorana equation is an
    ordinary linear system once amplitudes are split into real and imaginary
    parts.  Columns are obtained by applying the complex right-hand side to each
    real basis vector.
    """
    q = momentum_symbol(n_cells, "spectral").real
    dim = 2 * n_cells
    gen = np.empty((2 * dim, 2 * dim))
    for j in range(2 * dim):
        x = np.zeros(2 * dim)
        x[j] = 1.0
        psi = (x[:dim] + 1j * x[dim:]).reshape(2, n_cells)
        d = _majorana_rhs_complex(psi, mu, q).reshape(-1)
        gen[:dim, j] = d.real
        gen[dim:, j] = d.imag
    gen.flags.writeable = False
    return gen


def _to_real(psi: SpinorField) -> np.ndarray:
    flat = psi.as_array().reshape(-1)
    return np.concatenate([flat.real, flat.imag])


def _from_real(x: np.ndarray, n_cells: int) -> SpinorField:
    dim = 2 * n_cells
    return SpinorField.from_array((x[:dim] + 1j * x[dim:]).reshape(2, n_cells))


def majorana_evolve_reference_many(
    states: list[SpinorField],
    mu: float,
    zetas: list[float],
    grid: GridSpec,
    step: float,
) -> list[list[SpinorField]]:
    """Batched reference integration; returns ``out[state_index][zeta_index]``."""
    if not step > 0:
        raise InvalidParameterError(f"step must be positive, got {step!r}")
    for psi in states:
        _require_periodic(grid, psi)
    n = grid.n_cells
    gen = majorana_real_generator(n, float(mu))
    y0 = np.stack([_to_real(psi) for psi in states], axis=1)
    order = np.argsort(zetas)
    snapshots = rk4(lambda y: gen @ y, y0, max(zetas), step, [zetas[i] for i in order])
    by_zeta = [None] * len(zetas)
    for slot, snap in zip(order, snapshots):
        by_zeta[slot] = snap
    return [[_from_real(snap[:, i], n) for snap in by_zeta] for i in range(len(states))]


def majorana_evolve_reference(
    psi: SpinorField,
    params: DimensionlessParams,
    grid: GridSpec,
    step: float,
) -> SpinorField:
    """Integrate the Majorana equation directly (real doubling + fixed-step RK4)."""
    return majorana_evolve_reference_many([psi], params.mu, [params.zeta], grid, step)[0][0]
