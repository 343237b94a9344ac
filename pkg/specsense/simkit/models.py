from enum import IntEnum

from pydantic import Field, model_validator

from specsense.core.models import ForbidExtraModel


class ReceptionEvent(IntEnum):
    """Outcome of one sensing step."""

    RECEIVED = 0
    TRANSMITTED_COLLIDED = 1
    NO_TRANSMIT = 2

    @property
    def transmitted(self) -> bool:
        """Whether the sensor sent a packet."""
        return self is not ReceptionEvent.NO_TRANSMIT


class TrialResult(ForbidExtraModel):
    """One simulated run of the sensor and remote estimator."""

    avg_cov_trace: float = Field(ge=0, description="Trace of the time-averaged prediction covariance.")
    energy_per_step: float = Field(ge=0, description="Consumed energy divided by the simulated steps.")
    packets_attempted: int = Field(ge=0, description="Sensing steps that ended with a transmission.")
    packets_received: int = Field(ge=0, description="Transmissions that reached the estimator.")
    sensing_events: int = Field(ge=0, description="Number of sensing steps.")
    horizon: int = Field(ge=1, description="Requested number of steps.")
    peak_cov_trace: float = Field(ge=0, description="Largest covariance trace seen during the run.")
    diverged: bool = Field(default=False, description="Whether the run was stopped by the divergence guard.")

    @model_validator(mode='after')
    def check_counts(self) -> 'TrialResult':
        """received <= attempted <= sensing events."""
        if not self.packets_received <= self.packets_attempted <= self.sensing_events:
            raise ValueError(
                f"Inconsistent counts: received={self.packets_received}, attempted={self.packets_attempted}, "
                f"sensing events={self.sensing_events}."
            )
        return self


class FieldSummary(ForbidExtraModel):
    """Mean over trials and its standard error."""

    mean: float = Field(description="Mean over trials.")
    standard_error: float = Field(ge=0, description="Standard error of the mean, 0 for a single trial.")


class MonteCarloSummary(ForbidExtraModel):
    """Aggregate of independent trials."""

    trials: int = Field(ge=1, description="Number of trials.")
    avg_cov_trace: FieldSummary
    energy_per_step: FieldSummary
    packets_attempted: FieldSummary
    packets_received: FieldSummary
    empirical_gamma: float = Field(ge=0, le=1, description="Received packets per sensing step over all trials.")
    gamma_standard_error: float = Field(ge=0, description="Standard error of the per-trial reception ratios.")
    diverged_trials: int = Field(ge=0, description="Trials stopped by the divergence guard.")
