from functools import cached_property

import numpy as np
from pydantic import Field, model_validator

from specsense.core.exceptions import DimensionMismatchError
from specsense.core.models import ForbidExtraModel, Matrix
from specsense.utils.linalg import psd_sqrt


def check_dimensions(A: np.ndarray, C: np.ndarray, Q: np.ndarray, R: np.ndarray) -> None:
    """
    Raises if the plant matrices do not fit together (A: q1 x q1, C: q2 x q1, Q: q1 x q1, R: q2 x q2).
    :return: None
    """
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"A must be square, got shape {A.shape}.")
    q1 = A.shape[0]
    if C.ndim != 2 or C.shape[1] != q1:
        raise DimensionMismatchError(f"C must have {q1} columns, got shape {C.shape}.")
    q2 = C.shape[0]
    if Q.shape != (q1, q1):
        raise DimensionMismatchError(f"Q must be {q1}x{q1}, got shape {Q.shape}.")
    if R.shape != (q2, q2):
        raise DimensionMismatchError(f"R must be {q2}x{q2}, got shape {R.shape}.")


class LinearSystem(ForbidExtraModel):
    """Linear plant x_{k+1} = A x_k + w_k, y_k = C x_k + v_k with w ~ N(0, Q), v ~ N(0, R)."""

    A: Matrix = Field(description="State transition matrix (q1 x q1).")
    C: Matrix = Field(description="Observation matrix (q2 x q1).")
    Q: Matrix = Field(description="Process noise covariance (q1 x q1).")
    R: Matrix = Field(description="Measurement noise covariance (q2 x q2).")

    @model_validator(mode='after')
    def check_shapes(self) -> 'LinearSystem':
        """Structural check only; numerical invariants are reported by validate_system."""
        check_dimensions(self.A, self.C, self.Q, self.R)
        return self

    @property
    def q1(self) -> int:
        """State dimension."""
        return int(self.A.shape[0])

    @property
    def q2(self) -> int:
        """Measurement dimension."""
        return int(self.C.shape[0])

    @cached_property
    def process_noise_factor(self) -> np.ndarray:
        """Symmetric square root of Q."""
        return psd_sqrt(self.Q)

    @cached_property
    def measurement_noise_factor(self) -> np.ndarray:
        """Symmetric square root of R."""
        return psd_sqrt(self.R)


class InvariantCheck(ForbidExtraModel):
    """Outcome of one numerical invariant check."""

    name: str = Field(description="Name of the invariant.")
    passed: bool = Field(description="Whether the invariant holds.")
    value: float = Field(description="Numerical evidence (rank, eigenvalue, ...).")
    detail: str = Field(description="Human readable evidence.")


class ValidationReport(ForbidExtraModel):
    """Per-invariant validation result of a LinearSystem."""

    checks: tuple[InvariantCheck, ...] = Field(description="All invariant checks in a fixed order.")
    spectral_radius: float = Field(ge=0, description="Maximum absolute eigenvalue of A.")

    @property
    def passed(self) -> bool:
        """Whether every invariant holds."""
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> InvariantCheck:
        """
        Look up a check by name.
        :param name: Invariant name.
        :return: The matching check.
        """
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(f"No invariant named '{name}'.")
