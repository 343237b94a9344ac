from enum import IntEnum
from typing import Optional

from pydantic import Field, model_validator

from specsense.channel.models import ChannelModel
from specsense.core.exceptions import DimensionMismatchError
from specsense.core.models import ForbidExtraModel
from specsense.dynamics.models import LinearSystem
from specsense.estimation.models import CovarianceMatrix
from specsense.sensing.models import EnergyParams, SensingConfig
from specsense.utils.linalg import OrderMode


class SubproblemCase(IntEnum):
    """Shape of the reception rate and energy curves over the sensing time, decided by eps_d, eps_f and rho."""

    CASE1 = 1
    CASE2 = 2
    CASE3 = 3
    CASE4 = 4


class ProblemSpec(ForbidExtraModel):
    """Inputs of the scheduling problem; sense.tau is ignored (it is the decision variable)."""

    sys: LinearSystem = Field(description="Plant.")
    ch: ChannelModel = Field(description="Channel occupancy model.")
    sense: SensingConfig = Field(description="Detector settings; tau_max bounds the decision variable.")
    ep: EnergyParams = Field(description="Energy prices.")
    P_bar: CovarianceMatrix = Field(description="Performance target on the averaged covariance.")
    order: OrderMode = Field(default=OrderMode.LOEWNER, description="Matrix inequality used for every comparison.")

    @model_validator(mode='after')
    def check_target_shape(self) -> 'ProblemSpec':
        """The target must be q1 x q1."""
        if self.P_bar.entries.shape != (self.sys.q1, self.sys.q1):
            raise DimensionMismatchError(
                f"P_bar has shape {self.P_bar.entries.shape}, plant expects ({self.sys.q1}, {self.sys.q1})."
            )
        return self


class NBounds(ForbidExtraModel):
    """Upper bounds on the sensing period."""

    n_bar_1: Optional[int] = Field(description="Bound from stability; None if unbounded (rho(A) <= 1).")
    n_bar_2: int = Field(ge=0, description="Largest period meeting the target at the best reception rate.")
    n_bar: int = Field(ge=0, description="min(n_bar_1, n_bar_2); 0 signals a globally infeasible target.")


class SubproblemResult(ForbidExtraModel):
    """Optimal sensing time for one fixed sensing period."""

    n: int = Field(ge=1, description="Sensing period.")
    feasible: bool = Field(description="Whether some tau meets the reception floor.")
    gamma_floor: Optional[float] = Field(default=None, description="Minimum reception rate for this period.")
    tau: Optional[float] = Field(default=None, description="Optimal sensing time in seconds.")
    phi: Optional[float] = Field(default=None, description="Energy per step at the optimal sensing time.")
    gamma: Optional[float] = Field(default=None, description="Reception rate at the optimal sensing time.")
    case_id: Optional[SubproblemCase] = Field(default=None, description="Curve shape case.")
    candidates: tuple[float, ...] = Field(default=(), description="Sensing times compared for this period.")
    diagnostics: tuple[str, ...] = Field(default=(), description="Skipped roots and infeasibility reasons.")


class Solution(ForbidExtraModel):
    """Jointly optimal sensing period and sensing time."""

    feasible: bool = Field(description="Whether any period admits a feasible sensing time.")
    n_star: Optional[int] = Field(default=None, description="Optimal sensing period.")
    tau_star: Optional[float] = Field(default=None, description="Optimal sensing time in seconds.")
    phi_star: Optional[float] = Field(default=None, description="Minimal energy per step.")
    gamma_star: Optional[float] = Field(default=None, description="Reception rate at the optimum.")
    case_id: Optional[SubproblemCase] = Field(default=None, description="Curve shape case.")
    bounds: NBounds = Field(description="Period bounds used for the enumeration.")
    per_n: tuple[SubproblemResult, ...] = Field(default=(), description="One record per enumerated period.")
