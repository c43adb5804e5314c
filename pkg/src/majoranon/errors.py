"""Exception hierarchy shared by the library and the CLI."""


class SimulationError(Exception):
    """Base class for all errors raised by majoranon."""


class InvalidParameterError(SimulationError, ValueError):
    """A scalar parameter is outside its admissible range."""


class DegenerateInputError(SimulationError, ValueError):
    """The input carries no intensity (or otherwise cannot be normalized)."""


class ShapeError(SimulationError, ValueError):
    """Array or grid sizes do not match."""


class UnsupportedBoundaryError(SimulationError, ValueError):
    """The requested operation is not defined for the grid's boundary condition."""


class ContractViolationError(SimulationError, RuntimeError):
    """A numerical contract (normalization, unitarity) was breached."""


class ConfigError(SimulationError, ValueError):
    """Malformed or inconsistent experiment configuration."""
