"""Two-plane photonic chip that realises the Majoranon as psi_+ + i psi_-.

Signal path, front to back:

1. A single flat-phased beam enters a balanced directional coupler, which feeds
   the upper and lower plane with equal intensity and a relative phase of i.
2. Segmented waveguide sections add a phase delay ``j pi/2`` per site so that the
   upper plane carries the encoded psi_+ and the lower plane the encoded psi_-.
   For a zero-momentum input the two segmentation profiles step in opposite
   directions across the array.
3. Each plane evolves as a binary array (upper AB = mass +beta, lower BA = mass
   -beta) over the effective length ``L_e + fan-out extension``.
4. Vertical couplers of angle ``theta`` mix each upper/lower site pair; at
   ``theta = pi/4`` the upper ports carry ``(psi_+ + i psi_-) / sqrt(2)``.

The fan-out is an additive length, segmentation an ideal phase element and the
couplers lossless; no bend or radiation loss is modeled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from majoranon.errors import InvalidParameterError, ShapeError
from majoranon.fields import LatticeField, SpinorField, normalize
from majoranon.lattice import (
    ENCODING_GRADIENT,
    BinaryLattice,
    Ordering,
    decode_lattice_field,
    decode_lattice_intensity,
    encode_spinor_to_lattice,
    lattice_evolve,
)
from majoranon.observables import ObservableSeries, centroid, pseudo_energy, rms_width
from majoranon.relativistic import decompose_majoranon

BALANCED = math.pi / 4
_PHASE_TOL = 1e-9


def effective_length(evolution_length_mm: float, fanout_extra_mm: float) -> float:
    """Evolution length including the residual coupling in the fan-out section."""
    if evolution_length_mm < 0 or fanout_extra_mm < 0:
        raise InvalidParameterError("lengths must be >= 0")
    return evolution_length_mm + fanout_extra_mm


@dataclass(frozen=True)
class DeviceSpec:
    lattice_upper: BinaryLattice
    lattice_lower: BinaryLattice
    evolution_length_mm: float
    fanout_extra_mm: float = 0.0
    coupler_theta: float = BALANCED
    segmentation_step_mm: Optional[float] = None
    input_waist_cells: Optional[float] = None
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        up, low = self.lattice_upper, self.lattice_lower
        if (up.n_sites, up.kappa, up.beta) != (low.n_sites, low.kappa, low.beta):
            raise InvalidParameterError("upper and lower lattices must share K, kappa and beta")
        if up.ordering == low.ordering:
            raise InvalidParameterError("upper and lower lattices must have opposite sublattice ordering")
        if up.n_sites % 2:
            raise InvalidParameterError("lattices need an even number of sites (two per spinor cell)")
        if effective_length(self.evolution_length_mm, self.fanout_extra_mm) <= 0:
            raise InvalidParameterError("effective evolution length must be positive")

    @classmethod
    def from_parameters(
        cls,
        n_sites: int,
        kappa: float,
        beta: float,
        evolution_length_mm: float,
        fanout_extra_mm: float = 0.0,
        **kwargs,
    ) -> "DeviceSpec":
        return cls(
            BinaryLattice(n_sites, kappa, beta, Ordering.AB),
            BinaryLattice(n_sites, kappa, beta, Ordering.BA),
            evolution_length_mm,
            fanout_extra_mm,
            **kwargs,
        )

    @property
    def effective_length_mm(self) -> float:
        return effective_length(self.evolution_length_mm, self.fanout_extra_mm)

    @property
    def kappa(self) -> float:
        return self.lattice_upper.kappa

    @property
    def effective_zeta(self) -> float:
        return self.effective_length_mm * self.kappa

    @property
    def n_sites(self) -> int:
        return self.lattice_upper.n_sites


def segmentation_phase(j: int) -> float:
    """Phase delay of a segmented section of ``j`` unit lengths."""
    if j not in (0, 1, 2, 3):
        raise InvalidParameterError(f"segmentation index must be in 0..3, got {j!r}")
    return j * math.pi / 2


def segmentation_profile(incoming: LatticeField, target: LatticeField) -> np.ndarray:
    """Per-site ``j`` turning ``incoming`` into ``target`` by phase delays ``j pi/2``.

    Raises ``InvalidParameterError`` when the target differs from the incoming
    field by more than a quarter-wave phase at some site.
    """
    if incoming.n_sites != target.n_sites:
        raise ShapeError("incoming and target fields differ in size")
    a, b = incoming.amps, target.amps
    if not np.allclose(np.abs(a), np.abs(b), rtol=0, atol=_PHASE_TOL):
        raise InvalidParameterError("segmentation cannot change amplitudes")
    lit = np.abs(a) > _PHASE_TOL
    quarters = np.zeros(a.size)
    quarters[lit] = np.angle(b[lit] / a[lit]) / (math.pi / 2)
    j = np.round(quarters)
    if np.any(np.abs(quarters - j) > 1e-6):
        raise InvalidParameterError("required phases are not multiples of pi/2")
    return np.mod(j, 4).astype(int)


def apply_segmentation(f: LatticeField, profile) -> LatticeField:
    phases = np.array([segmentation_phase(int(j)) for j in profile])
    if phases.size != f.n_sites:
        raise ShapeError("profile length differs from site count")
    return LatticeField(f.amps * np.exp(1j * phases))


def front_splitter(f: LatticeField) -> tuple[LatticeField, LatticeField]:
    """Balanced single-input coupler: ``(cos(pi/4) a, i sin(pi/4) a)``."""
    return (
        LatticeField(f.amps * math.cos(BALANCED)),
        LatticeField(f.amps * 1j * math.sin(BALANCED)),
    )


def recombine(
    upper: LatticeField, lower: LatticeField, theta: float = BALANCED
) -> tuple[LatticeField, LatticeField]:
    """Site-wise directional coupler ``[[cos, i sin], [i sin, cos]]``."""
    if upper.n_sites != lower.n_sites:
        raise ShapeError(f"plane sizes differ: {upper.n_sites} vs {lower.n_sites}")
    c, s = math.cos(theta), math.sin(theta)
    return (
        LatticeField(c * upper.amps + 1j * s * lower.amps),
        LatticeField(1j * s * upper.amps + c * lower.amps),
    )


@dataclass(frozen=True, eq=False)
class EncodedInput:
    beam: LatticeField
    profile_upper: np.ndarray
    profile_lower: np.ndarray
    upper: LatticeField
    lower: LatticeField


def encoding_stage(spec: DeviceSpec, psi0: SpinorField) -> EncodedInput:
    """Splitter plus segmentation producing the encoded psi_+ / psi_- plane inputs.

    Only inputs whose two parts have equal site-wise moduli and quarter-wave
    relative phases can be prepared this way; the zero-momentum wavepackets
    used in the experiments qualify.
    """
    if 2 * psi0.n_cells != spec.n_sites:
        raise ShapeError(f"{psi0.n_cells} cells do not fit a {spec.n_sites}-site device")
    plus, minus = decompose_majoranon(psi0)
    target_up = encode_spinor_to_lattice(plus, ENCODING_GRADIENT)
    target_low = encode_spinor_to_lattice(minus, ENCODING_GRADIENT)
    if not np.allclose(np.abs(target_up.amps), np.abs(target_low.amps), rtol=0, atol=_PHASE_TOL):
        raise InvalidParameterError("input spinor cannot be prepared from a single beam and a balanced splitter")
    beam = LatticeField(math.sqrt(2.0) * np.abs(target_up.amps))
    up0, low0 = front_splitter(beam)
    j_up = segmentation_profile(up0, target_up)
    j_low = segmentation_profile(low0, target_low)
    return EncodedInput(beam, j_up, j_low, apply_segmentation(up0, j_up), apply_segmentation(low0, j_low))


def propagate_planes(
    spec: DeviceSpec, upper: LatticeField, lower: LatticeField, method: str = "eigen"
) -> tuple[LatticeField, LatticeField]:
    length = spec.effective_length_mm
    return (
        lattice_evolve(spec.lattice_upper, upper, length, method),
        lattice_evolve(spec.lattice_lower, lower, length, method),
    )


@dataclass(frozen=True, eq=False)
class DeviceResult:
    encoded: EncodedInput
    planes: tuple[LatticeField, LatticeField]
    out_upper: LatticeField
    out_lower: LatticeField
    decoded: tuple[np.ndarray, np.ndarray]
    series: ObservableSeries

    @property
    def upper_port_intensity(self) -> np.ndarray:
        return self.out_upper.intensities()

    @property
    def pseudo_energy(self) -> float:
        return float(self.series.values["pseudo_energy"][0])

    def majoranon(self) -> SpinorField:
        """Spinor read from the upper ports, renormalized."""
        return normalize(decode_lattice_field(self.out_upper, ENCODING_GRADIENT))


def simulate_device(spec: DeviceSpec, psi0: SpinorField, method: str = "eigen") -> DeviceResult:
    encoded = encoding_stage(spec, psi0)
    planes = propagate_planes(spec, encoded.upper, encoded.lower, method)
    out_up, out_low = recombine(*planes, spec.coupler_theta)
    i1, i2 = decode_lattice_intensity(out_up)
    total = i1.sum() + i2.sum()
    i1, i2 = i1 / total, i2 / total
    spinor = normalize(decode_lattice_field(out_up, ENCODING_GRADIENT))
    series = ObservableSeries(
        zeta=[spec.effective_zeta],
        kappa=spec.kappa,
        values={
            "pseudo_energy": [pseudo_energy(spinor)],
            "centroid": [centroid(spinor)],
            "rms_width": [rms_width(spinor)],
        },
        maps={"upper_port": out_up.intensities()[None, :]},
    )
    return DeviceResult(encoded, planes, out_up, out_low, (i1, i2), series)
