"""Discrete field containers and initial wavepackets.

Spinor amplitudes live on unit cells ``n = 1..N``; lattice amplitudes live on
waveguide sites ``k = 1..K``.  Both containers are immutable: the backing arrays
are copied on construction and flagged read-only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from majoranon.errors import DegenerateInputError, InvalidParameterError, ShapeError

NORM_TOL = 1e-12


class Boundary(str, enum.Enum):
    PERIODIC = "periodic"
    OPEN = "open"


@dataclass(frozen=True)
class GridSpec:
    """Transverse grid of ``n_cells`` unit cells with unit spacing."""

    n_cells: int
    boundary: Boundary = Boundary.PERIODIC

    def __post_init__(self):
        if int(self.n_cells) != self.n_cells or self.n_cells < 2:
            raise InvalidParameterError(f"n_cells must be an integer >= 2, got {self.n_cells!r}")
        object.__setattr__(self, "n_cells", int(self.n_cells))
        object.__setattr__(self, "boundary", Boundary(self.boundary))

    @property
    def site_spacing(self) -> float:
        return 1.0

    @property
    def positions(self) -> np.ndarray:
        """Cell indices ``1..N`` as floats."""
        return np.arange(1, self.n_cells + 1, dtype=float)


def default_center(n_cells: int) -> float:
    """Packet center used by the presets: the middle of ``1..N``."""
    return (n_cells + 1) / 2.0


def _frozen_complex(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise InvalidParameterError(f"{name} contains non-finite amplitudes")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Two-component spinor ``(psi_1, psi_2)`` sampled on unit cells."""

    comp1: np.ndarray
    comp2: np.ndarray

    def __post_init__(self):
        c1 = _frozen_complex(self.comp1, "comp1")
        c2 = _frozen_complex(self.comp2, "comp2")
        if c1.shape != c2.shape:
            raise ShapeError(f"component lengths differ: {c1.size} vs {c2.size}")
        if c1.size == 0:
            raise ShapeError("spinor field needs at least one cell")
        object.__setattr__(self, "comp1", c1)
        object.__setattr__(self, "comp2", c2)

    @classmethod
    def from_array(cls, arr) -> "SpinorField":
        """Build from a ``(2, N)`` array."""
        arr = np.asarray(arr)
        if arr.ndim != 2 or arr.shape[0] != 2:
            raise ShapeError(f"expected shape (2, N), got {arr.shape}")
        return cls(arr[0], arr[1])

    @property
    def n_cells(self) -> int:
        return self.comp1.size

    def as_array(self) -> np.ndarray:
        """Writable ``(2, N)`` copy of the amplitudes."""
        return np.stack([self.comp1, self.comp2])

    def intensities(self) -> tuple[np.ndarray, np.ndarray]:
        return np.abs(self.comp1) ** 2, np.abs(self.comp2) ** 2

    def allclose(self, other: "SpinorField", atol: float = 1e-12) -> bool:
        return self.n_cells == other.n_cells and bool(
            np.allclose(self.as_array(), other.as_array(), rtol=0.0, atol=atol)
        )


@dataclass(frozen=True, eq=False)
class LatticeField:
    """Complex modal amplitude per waveguide site ``k = 1..K``."""

    amps: np.ndarray = field()

    def __post_init__(self):
        a = _frozen_complex(self.amps, "amps")
        if a.size == 0:
            raise ShapeError("lattice field needs at least one site")
        object.__setattr__(self, "amps", a)

    @property
    def n_sites(self) -> int:
        return self.amps.size

    def intensities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


Field = Union[SpinorField, LatticeField]


def total_intensity(f: Field) -> float:
    """Sum of squared moduli of every amplitude in ``f``."""
    if isinstance(f, SpinorField):
        i1, i2 = f.intensities()
        return float(i1.sum() + i2.sum())
    return float(f.intensities().sum())


def normalize(f: Field) -> Field:
    """Rescale ``f`` to unit total intensity.

    A field that is already normalized to within 1e-15 is returned unchanged so
    that repeated normalization is exactly idempotent.
    """
    norm2 = total_intensity(f)
    if not norm2 > 0.0:
        raise DegenerateInputError("cannot normalize a field with zero total intensity")
    if abs(norm2 - 1.0) <= 1e-15:
        return f
    scale = 1.0 / np.sqrt(norm2)
    if isinstance(f, SpinorField):
        return SpinorField(f.comp1 * scale, f.comp2 * scale)
    return LatticeField(f.amps * scale)


def gaussian_spinor(
    grid: GridSpec,
    n0: float,
    sigma: float,
    p0: float = 0.0,
    weight1: complex = 1.0,
    weight2: complex = 0.0,
) -> SpinorField:
    """Normalized Gaussian wavepacket ``w_c exp(-(n-n0)^2 / 2 sigma^2) exp(i p0 n)``."""
    if not (np.isfinite(sigma) and sigma > 0):
        raise InvalidParameterError(f"sigma must be positive, got {sigma!r}")
    if weight1 == 0 and weight2 == 0:
        raise InvalidParameterError("at least one component weight must be nonzero")
    n = grid.positions
    envelope = np.exp(-((n - n0) ** 2) / (2.0 * sigma**2)) * np.exp(1j * p0 * n)
    psi = SpinorField(weight1 * envelope, weight2 * envelope)
    return normalize(psi)
