from enum import StrEnum
from functools import cached_property

import numpy as np
from pydantic import Field, model_validator

from specsense.core.models import ForbidExtraModel


class ChannelState(StrEnum):
    """Occupancy state of the channel."""

    IDLE = 'idle'
    BUSY = 'busy'


class ChannelModel(ForbidExtraModel):
    """Exponential on/off channel: idle periods end at rate alpha, busy periods at rate beta."""

    alpha: float = Field(gt=0, description="Idle-to-busy transition rate in 1/s, E[t_I] = 1/alpha.")
    beta: float = Field(gt=0, description="Busy-to-idle transition rate in 1/s, E[t_B] = 1/beta.")

    @property
    def mean_idle_time(self) -> float:
        """E[t_I] in seconds."""
        return 1.0 / self.alpha

    @property
    def mean_busy_time(self) -> float:
        """E[t_B] in seconds."""
        return 1.0 / self.beta

    @property
    def rho(self) -> float:
        """Ratio alpha / beta of busy to idle probability."""
        return self.alpha / self.beta


class ChannelTrajectory(ForbidExtraModel):
    """Alternating idle/busy holding times sampled over a finite window."""

    start_state: ChannelState = Field(description="State of the first holding interval.")
    holding_times: tuple[float, ...] = Field(min_length=1, description="Ordered interval durations in seconds.")
    total_duration: float = Field(gt=0, description="Length of the sampled window in seconds.")

    @model_validator(mode='after')
    def check_coverage(self) -> 'ChannelTrajectory':
        """Holding times are strictly positive and cover the window."""
        if min(self.holding_times) <= 0.0:
            raise ValueError("Holding times must be strictly positive.")
        if sum(self.holding_times) < self.total_duration:
            raise ValueError("Holding times do not cover the total duration.")
        return self

    @cached_property
    def boundaries(self) -> np.ndarray:
        """End time of every holding interval."""
        return np.cumsum(self.holding_times)

    def state_of_interval(self, index: int) -> ChannelState:
        """State of the interval with the given index; states alternate starting from start_state."""
        if index % 2 == 0:
            return self.start_state
        return ChannelState.BUSY if self.start_state is ChannelState.IDLE else ChannelState.IDLE
