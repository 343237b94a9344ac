from pydantic import Field, model_validator

from specsense.core.models import ForbidExtraModel


class SensingConfig(ForbidExtraModel):
    """Energy detector settings; tau is the decision variable of the scheduling problem."""

    tau: float = Field(default=0.0, ge=0, description="Sensing time in seconds.")
    tau_max: float = Field(gt=0, description="Upper bound on the sensing time in seconds.")
    bandwidth: float = Field(gt=0, description="Channel bandwidth W in Hz; tau * W is the detector's sample count.")
    eps_d: float = Field(gt=0, description="Threshold factor for correct idle detection.")
    eps_f: float = Field(gt=0, description="Threshold factor for false idle detection.")
    t_x: float = Field(gt=0, description="Transmission time of one packet in seconds.")

    @model_validator(mode='after')
    def check_ranges(self) -> 'SensingConfig':
        """tau within [0, tau_max] and eps_d > eps_f."""
        if self.tau > self.tau_max:
            raise ValueError(f"tau={self.tau} exceeds tau_max={self.tau_max}.")
        if self.eps_d <= self.eps_f:
            raise ValueError(f"eps_d={self.eps_d} must exceed eps_f={self.eps_f}.")
        return self

    def with_tau(self, tau: float) -> 'SensingConfig':
        """Copy with another (validated) sensing time."""
        return SensingConfig.model_validate(self.model_dump() | {'tau': tau})


class EnergyParams(ForbidExtraModel):
    """Energy prices of sensing and transmitting."""

    e_s: float = Field(ge=0, description="Energy per second of spectrum sensing.")
    e_tx: float = Field(ge=0, description="Energy per transmitted packet.")

    @model_validator(mode='after')
    def check_not_both_zero(self) -> 'EnergyParams':
        """At least one price is positive."""
        if self.e_s == 0.0 and self.e_tx == 0.0:
            raise ValueError("e_s and e_tx must not both be zero.")
        return self


class ObjectiveEvaluation(ForbidExtraModel):
    """Objective value and tau-derivatives of the per-step energy at one sensing time."""

    phi_bar: float = Field(description="Average energy per step.")
    d_phi_d_tau: float = Field(description="Derivative of phi_bar with respect to tau.")
    d_gamma_d_tau: float = Field(description="Derivative of the reception rate with respect to tau.")
    f_value: float = Field(description="Shape function whose sign decides the monotonicity of phi_bar.")
