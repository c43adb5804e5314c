"""Measured quantities: pseudo-energy, centroid and width traces, intensity maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from majoranon.errors import ContractViolationError, DegenerateInputError, InvalidParameterError
from majoranon.fields import LatticeField, SpinorField, total_intensity

NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ObservableSeries:
    """Scalar observables (``values``) and intensity rows (``maps``) sampled over zeta.

    Every array in ``values`` has one entry per zeta sample; every matrix in ``maps``
    has one row per zeta sample.  ``kappa`` (mm^-1), when known, converts zeta to
    propagation distance in mm.
    """

    zeta: np.ndarray
    values: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    kappa: Optional[float] = None

    def __post_init__(self):
        zeta = np.asarray(self.zeta, dtype=float).reshape(-1)
        if zeta.size > 1 and not np.all(np.diff(zeta) > 0):
            raise InvalidParameterError("zeta samples must be strictly increasing")
        object.__setattr__(self, "zeta", zeta)
        for name, col in self.values.items():
            col = np.asarray(col, dtype=float)
            if col.shape != zeta.shape:
                raise InvalidParameterError(f"observable {name!r} has {col.size} samples, expected {zeta.size}")
            self.values[name] = col
        for name, mat in self.maps.items():
            mat = np.asarray(mat, dtype=float)
            if mat.ndim != 2 or mat.shape[0] != zeta.size:
                raise InvalidParameterError(f"map {name!r} must have one row per zeta sample")
            self.maps[name] = mat
        pe = self.values.get("pseudo_energy")
        if pe is not None and np.any(np.abs(pe) > 1.0 + NORMALIZATION_TOL):
            raise ContractViolationError("pseudo-energy outside [-1, 1]")

    @property
    def z_mm(self) -> Optional[np.ndarray]:
        return None if self.kappa is None else self.zeta / self.kappa

    def __len__(self) -> int:
        return self.zeta.size


def _require_normalized(psi: SpinorField) -> None:
    norm = total_intensity(psi)
    if abs(norm - 1.0) > NORMALIZATION_TOL:
        raise ContractViolationError(f"expected a normalized spinor, total intensity is {norm!r}")


def pseudo_energy(psi: SpinorField) -> float:
    """``<sigma_z> = sum_n |psi_1,n|^2 - |psi_2,n|^2`` of a normalized spinor."""
    _require_normalized(psi)
    i1, i2 = psi.intensities()
    return float(i1.sum() - i2.sum())


def _position_weights(f: Union[LatticeField, SpinorField]) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(f, SpinorField):
        i1, i2 = f.intensities()
        w = i1 + i2
    else:
        w = f.intensities()
    total = w.sum()
    if not total > 0:
        raise DegenerateInputError("field has zero intensity")
    return np.arange(1, w.size + 1, dtype=float), w / total


def centroid(f: Union[LatticeField, SpinorField]) -> float:
    x, w = _position_weights(f)
    return float(np.dot(x, w))


def rms_width(f: Union[LatticeField, SpinorField]) -> float:
    x, w = _position_weights(f)
    mean = np.dot(x, w)
    return float(np.sqrt(max(np.dot((x - mean) ** 2, w), 0.0)))


def oscillation_amplitude(values: Sequence[float]) -> float:
    """Peak-to-peak excursion ``max - min`` of a sampled trace."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise InvalidParameterError("empty trace")
    return float(v.max() - v.min())


def first_minimum(zeta: Sequence[float], values: Sequence[float]) -> Optional[float]:
    """Location of the first interior local minimum, refined by a parabola through
    the three bracketing samples.  ``None`` when the trace has no interior minimum.
    """
    z = np.asarray(zeta, dtype=float)
    v = np.asarray(values, dtype=float)
    for i in range(1, v.size - 1):
        if v[i] < v[i - 1] and v[i] <= v[i + 1]:
            denom = v[i - 1] - 2.0 * v[i] + v[i + 1]
            if denom <= 0:
                return float(z[i])
            h = 0.5 * (z[i + 1] - z[i - 1])
            return float(z[i] + 0.5 * h * (v[i - 1] - v[i + 1]) / denom)
    return None


def _evolve_all(evolver, psi0: SpinorField, zetas) -> list[SpinorField]:
    zetas = [float(z) for z in zetas]
    if not zetas:
        raise InvalidParameterError("need at least one zeta sample")
    if hasattr(evolver, "evolve_many"):
        return evolver.evolve_many(psi0, zetas)
    return [evolver(psi0, z) for z in zetas]


def pseudo_energy_series(
    evolver: Callable[[SpinorField, float], SpinorField],
    psi0: SpinorField,
    zetas: Sequence[float],
    kappa: Optional[float] = None,
) -> ObservableSeries:
    """Pseudo-energy, centroid and rms width of ``psi0`` evolved to each zeta."""
    zetas = np.asarray(zetas, dtype=float)
    return series_from_states(zetas, _evolve_all(evolver, psi0, zetas), kappa)


def series_from_states(zetas, states: Sequence[SpinorField], kappa: Optional[float] = None) -> ObservableSeries:
    return ObservableSeries(
        zeta=zetas,
        kappa=kappa,
        values={
            "pseudo_energy": np.array([pseudo_energy(s) for s in states]),
            "centroid": np.array([centroid(s) for s in states]),
            "rms_width": np.array([rms_width(s) for s in states]),
        },
    )


@dataclass(frozen=True, eq=False)
class IntensityMap:
    """Spinor-component intensity evolution; rows follow ``zeta``, columns are cells."""

    zeta: np.ndarray
    comp1: np.ndarray
    comp2: np.ndarray

    @property
    def sites(self) -> np.ndarray:
        """Interleaved lattice-site view: column ``2n-2`` is psi_1,n, ``2n-1`` is psi_2,n."""
        out = np.empty((self.comp1.shape[0], 2 * self.comp1.shape[1]))
        out[:, 0::2] = self.comp1
        out[:, 1::2] = self.comp2
        return out

    def row_sums(self) -> np.ndarray:
        return self.comp1.sum(axis=1) + self.comp2.sum(axis=1)


def intensity_map(
    evolver: Callable[[SpinorField, float], SpinorField],
    psi0: SpinorField,
    zetas: Sequence[float],
) -> IntensityMap:
    zetas = np.asarray(zetas, dtype=float)
    return map_from_states(zetas, _evolve_all(evolver, psi0, zetas))


def map_from_states(zetas, states: Sequence[SpinorField]) -> IntensityMap:
    comp1 = np.array([s.intensities()[0] for s in states])
    comp2 = np.array([s.intensities()[1] for s in states])
    return IntensityMap(np.asarray(zetas, dtype=float), comp1, comp2)


def total_variation(p: Sequence[np.ndarray], q: Sequence[np.ndarray]) -> float:
    """Total-variation distance between two intensity patterns after normalizing each.

    ``p`` and ``q`` are sequences of arrays (e.g. the two spinor components) that are
    flattened together into one distribution.
    """
    a = np.concatenate([np.ravel(x) for x in p]).astype(float)
    b = np.concatenate([np.ravel(x) for x in q]).astype(float)
    if a.shape != b.shape:
        raise InvalidParameterError("intensity patterns differ in size")
    if not (a.sum() > 0 and b.sum() > 0):
        raise DegenerateInputError("intensity pattern has zero total")
    return float(0.5 * np.abs(a / a.sum() - b / b.sum()).sum())
