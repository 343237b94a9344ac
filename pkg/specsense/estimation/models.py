from typing import Optional

import numpy as np
from pydantic import Field, field_validator

from specsense.core.models import ForbidExtraModel, Matrix, Vector
from specsense.utils.linalg import is_psd, is_symmetric, symmetrize


class CovarianceMatrix(ForbidExtraModel):
    """Symmetric positive semidefinite covariance."""

    entries: Matrix = Field(description="Symmetric PSD matrix (q1 x q1).")

    @field_validator('entries')
    @classmethod
    def check_covariance(cls, value: np.ndarray) -> np.ndarray:
        """Square, symmetric up to rounding and PSD up to the package tolerance."""
        if value.shape[0] != value.shape[1]:
            raise ValueError(f"Covariance must be square, got shape {value.shape}.")
        if not is_symmetric(value):
            raise ValueError("Covariance must be symmetric.")
        if not is_psd(value):
            raise ValueError("Covariance must be positive semidefinite.")
        entries = symmetrize(value)
        entries.setflags(write=False)
        return entries

    @property
    def trace(self) -> float:
        """Trace of the covariance."""
        return float(np.trace(self.entries))


class FilterState(ForbidExtraModel):
    """Remote estimator state carried between steps of the modified Kalman filter."""

    x_hat: Vector = Field(description="One-step prediction of the state for the upcoming step k.")
    P: CovarianceMatrix = Field(description="Prediction error covariance for the upcoming step.")
    k: int = Field(default=1, ge=0, description="Index of the upcoming step.")
    x_filtered: Optional[Vector] = Field(default=None, description="Filtered estimate of the previous step.")
