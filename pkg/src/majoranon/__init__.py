"""Majoranon simulator.

Evolves the 1+1D Majorana equation by splitting it into two opposite-mass Dirac
equations, models the two-plane binary waveguide chip that realises it, and
extracts pseudo-energy, Zitterbewegung and intensity-map observables.
"""

from majoranon.device import DeviceSpec, simulate_device
from majoranon.errors import (
    ConfigError,
    ContractViolationError,
    DegenerateInputError,
    InvalidParameterError,
    ShapeError,
    SimulationError,
    UnsupportedBoundaryError,
)
from majoranon.fields import Boundary, GridSpec, LatticeField, SpinorField, gaussian_spinor, normalize
from majoranon.lattice import BinaryLattice, Ordering, lattice_evolve
from majoranon.observables import ObservableSeries, pseudo_energy
from majoranon.relativistic import (
    DimensionlessParams,
    MassSign,
    compose_majoranon,
    decompose_majoranon,
    dirac_evolve,
    majorana_evolve_composed,
    majorana_evolve_reference,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryLattice",
    "Boundary",
    "ConfigError",
    "ContractViolationError",
    "DegenerateInputError",
    "DeviceSpec",
    "DimensionlessParams",
    "GridSpec",
    "InvalidParameterError",
    "LatticeField",
    "MassSign",
    "ObservableSeries",
    "Ordering",
    "ShapeError",
    "SimulationError",
    "SpinorField",
    "UnsupportedBoundaryError",
    "compose_majoranon",
    "decompose_majoranon",
    "dirac_evolve",
    "gaussian_spinor",
    "lattice_evolve",
    "majorana_evolve_composed",
    "majorana_evolve_reference",
    "normalize",
    "pseudo_energy",
    "simulate_device",
]
