from typing import Optional


class SpecSenseError(Exception):
    """Base class of all errors raised by the package."""


class DimensionMismatchError(SpecSenseError, ValueError):
    """Matrix or vector shapes are inconsistent with each other."""


class TrajectoryQueryError(SpecSenseError, ValueError):
    """A channel trajectory was queried outside of its sampled window."""


class SingularDerivativeError(SpecSenseError, ArithmeticError):
    """Derivatives with respect to the sensing time are singular at tau = 0."""

    def __init__(self, message: str, phi_bar: Optional[float] = None) -> None:
        """
        :param message: Error message.
        :param phi_bar: The objective value, which is still well defined at the singular point.
        """
        super().__init__(message)
        self.phi_bar = phi_bar


class InstabilityError(SpecSenseError, ArithmeticError):
    """The expected error covariance diverges for the requested reception rate and sensing period."""


class ConvergenceError(SpecSenseError, RuntimeError):
    """An iterative computation did not converge within its iteration budget."""


class ConfigError(SpecSenseError, ValueError):
    """An experiment configuration could not be parsed or violates an invariant."""


class OutputError(SpecSenseError, OSError):
    """A result artifact could not be written."""
