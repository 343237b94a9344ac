from enum import StrEnum
from pathlib import Path
from typing import Optional

from pydantic import Field, model_validator

from specsense.cli.constants import DEFAULT_MASTER_SEED, DEFAULT_MC_HORIZON, DEFAULT_TRIALS
from specsense.core.constants import (
    DEFAULT_A,
    DEFAULT_ALPHA,
    DEFAULT_BANDWIDTH,
    DEFAULT_BETA,
    DEFAULT_C,
    DEFAULT_E_S,
    DEFAULT_E_TX,
    DEFAULT_EPS_D,
    DEFAULT_Q,
    DEFAULT_R,
    DEFAULT_REFERENCE_GAMMA,
    DEFAULT_REFERENCE_PERIOD,
    DEFAULT_SAMPLING_PERIOD,
    DEFAULT_SNR_DB,
    DEFAULT_T_X,
    DEFAULT_TAU_MAX,
)
from specsense.core.models import ForbidExtraModel, Matrix, as_matrix
from specsense.utils.linalg import OrderMode


class Command(StrEnum):
    SOLVE = 'solve'
    SWEEP = 'sweep'
    VALIDATE = 'validate'


class OutputFormat(StrEnum):
    CSV = 'csv'
    JSON = 'json'


class SweepVariable(StrEnum):
    """Swept parameter and the column it is reported under."""

    IDLE_PROBABILITY = 'idle_probability'
    ENERGY_RATIO = 'energy_ratio'

    @property
    def column(self) -> str:
        return 'p_I' if self is SweepVariable.IDLE_PROBABILITY else 'energy_ratio'


class SystemSection(ForbidExtraModel):
    A: Matrix = Field(default_factory=lambda: as_matrix(DEFAULT_A), description="State matrix, row-major.")
    C: Matrix = Field(default_factory=lambda: as_matrix(DEFAULT_C), description="Measurement matrix.")
    Q: Matrix = Field(default_factory=lambda: as_matrix(DEFAULT_Q), description="Process noise covariance.")
    R: Matrix = Field(default_factory=lambda: as_matrix(DEFAULT_R), description="Measurement noise covariance.")
    sampling_period: float = Field(default=DEFAULT_SAMPLING_PERIOD, gt=0, description="T_s in seconds.")


class ChannelSection(ForbidExtraModel):
    alpha: float = Field(default=DEFAULT_ALPHA, gt=0, description="Idle-to-busy rate in 1/s.")
    beta: float = Field(default=DEFAULT_BETA, gt=0, description="Busy-to-idle rate in 1/s.")


class SensingSection(ForbidExtraModel):
    tau_max: float = Field(default=DEFAULT_TAU_MAX, gt=0, description="Upper bound on the sensing time in seconds.")
    bandwidth: float = Field(default=DEFAULT_BANDWIDTH, gt=0, description="Bandwidth W in Hz.")
    eps_d: float = Field(default=DEFAULT_EPS_D, gt=0, description="Idle-hypothesis threshold factor.")
    eps_f: Optional[float] = Field(default=None, gt=0, description="Busy-hypothesis threshold factor.")
    snr_db: float = Field(default=DEFAULT_SNR_DB, description="Primary user SNR, used to derive eps_f.")
    t_x: float = Field(default=DEFAULT_T_X, gt=0, description="Transmission time in seconds.")


class EnergySection(ForbidExtraModel):
    e_s: float = Field(default=DEFAULT_E_S, ge=0, description="Energy per second of sensing.")
    e_tx: float = Field(default=DEFAULT_E_TX, ge=0, description="Energy per transmission.")


class PerformanceSection(ForbidExtraModel):
    p_bar: Optional[Matrix] = Field(default=None, description="Target on the averaged covariance.")
    reference_gamma: float = Field(default=DEFAULT_REFERENCE_GAMMA, gt=0, le=1)
    reference_period: int = Field(default=DEFAULT_REFERENCE_PERIOD, ge=1)
    order: OrderMode = Field(default=OrderMode.LOEWNER, description="Matrix inequality of the target.")


class SweepSection(ForbidExtraModel):
    variable: SweepVariable
    values: list[float] = Field(min_length=1)

    @model_validator(mode='after')
    def check_values(self) -> 'SweepSection':
        """Idle probabilities lie in (0, 1), energy ratios are positive."""
        if self.variable is SweepVariable.IDLE_PROBABILITY and not all(0.0 < value < 1.0 for value in self.values):
            raise ValueError("Idle probabilities must lie in (0, 1).")
        if self.variable is SweepVariable.ENERGY_RATIO and not all(value > 0.0 for value in self.values):
            raise ValueError("Energy ratios must be positive.")
        return self


class MonteCarloSection(ForbidExtraModel):
    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    horizon: int = Field(default=DEFAULT_MC_HORIZON, ge=1)
    master_seed: int = Field(default=DEFAULT_MASTER_SEED, ge=0, lt=2**64)


class OutputSection(ForbidExtraModel):
    path: Optional[Path] = Field(default=None, description="Result file; standard output if omitted.")
    format: OutputFormat = Field(default=OutputFormat.CSV)


class ExperimentConfig(ForbidExtraModel):
    """Experiment definition; every omitted key takes the reference scenario's value."""

    system: SystemSection = Field(default_factory=SystemSection)
    channel: ChannelSection = Field(default_factory=ChannelSection)
    sensing: SensingSection = Field(default_factory=SensingSection)
    energy: EnergySection = Field(default_factory=EnergySection)
    performance: PerformanceSection = Field(default_factory=PerformanceSection)
    sweep: Optional[SweepSection] = None
    monte_carlo: MonteCarloSection = Field(default_factory=MonteCarloSection)
    output: OutputSection = Field(default_factory=OutputSection)
