"""Exception hierarchy.

Configuration problems and numerical failures are kept apart because the
command line maps them to different exit codes.
"""


class ZNDError(Exception):
    """Base class for every error raised by the package."""


class ConfigurationError(ZNDError, ValueError):
    """Invalid scenario or parameter values.

    ``field`` names the offending input when there is one.
    """

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class NumericalError(ZNDError):
    """A solver or time integrator could not produce an admissible result."""


class DomainError(NumericalError, ValueError):
    """Argument outside the domain of a thermodynamic or locus function."""


class AdmissibilityError(NumericalError, ValueError):
    """No admissible shock exists for the requested data."""


class InvariantViolation(NumericalError):
    """A structural inequality that the analysis relies on failed."""


class ShockSolveError(NumericalError):
    """Newton iteration for the shock-boundary relations did not converge."""


class SimulationError(NumericalError):
    """A time step was rejected; ``snapshot`` holds the last valid state."""

    def __init__(self, message, snapshot=None):
        super().__init__(message)
        self.snapshot = snapshot


class CFLError(SimulationError):
    """Time step below the floor or Courant number above the stability limit."""


class StateEscapeError(SimulationError):
    """Reconstructed specific volume left the interval (0, 1)."""
