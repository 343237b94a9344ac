import math
from typing import overload

import numpy as np
import numpy.typing as npt
from scipy import special

from specsense.channel.models import ChannelModel
from specsense.channel.occupancy import hold_probability, occupancy_probabilities
from specsense.core.exceptions import SingularDerivativeError
from specsense.sensing.models import EnergyParams, ObjectiveEvaluation, SensingConfig

FloatArray = npt.NDArray[np.float64]


def _collapse(values: np.ndarray) -> float | FloatArray:
    """Returns a python float for 0-d results."""
    return float(values) if values.ndim == 0 else values


@overload
def q_function(z: float) -> float: ...


@overload
def q_function(z: FloatArray) -> FloatArray: ...


def q_function(z: float | FloatArray) -> float | FloatArray:
    """
    Gaussian upper tail Q(z) = erfc(z / sqrt(2)) / 2.
    :param z: Scalar or array argument.
    :return: Tail probability of the same shape.
    """
    values = np.asarray(z, dtype=float)
    if np.isnan(values).any():
        raise ValueError("Q-function is undefined for NaN.")
    return _collapse(0.5 * special.erfc(values / math.sqrt(2.0)))


def false_alarm_threshold(eps_d: float, snr_db: float) -> float:
    """
    Threshold factor of the busy hypothesis when one energy threshold serves both hypotheses:
    eps_f = eps_d * sigma_n^2 / (sigma_s^2 + sigma_n^2) = eps_d / (1 + SNR).
    :param eps_d: Idle-hypothesis threshold factor.
    :param snr_db: Signal-to-noise ratio of the primary user in dB.
    :return: eps_f.
    """
    return eps_d / (1.0 + 10.0 ** (snr_db / 10.0))


def detection_curve(eps: float, tau: float | FloatArray, bandwidth: float) -> float | FloatArray:
    """Probability of declaring the channel idle, Q((1 - eps) sqrt(tau W)), for threshold factor eps."""
    samples = np.sqrt(np.asarray(tau, dtype=float) * bandwidth)
    return q_function((1.0 - eps) * samples)


def detection_probabilities(cfg: SensingConfig) -> tuple[float, float]:
    """
    :param cfg: Sensing configuration (uses cfg.tau).
    :return: (p_d, p_f), the probabilities of declaring idle given idle and given busy.
    """
    p_d = detection_curve(cfg.eps_d, cfg.tau, cfg.bandwidth)
    p_f = detection_curve(cfg.eps_f, cfg.tau, cfg.bandwidth)
    return float(p_d), float(p_f)


def transmission_curve(cfg: SensingConfig, ch: ChannelModel, tau: float | FloatArray) -> float | FloatArray:
    """p_tx(tau) = p_I p_d(tau) + p_B p_f(tau)."""
    p_idle, p_busy = occupancy_probabilities(ch)
    return p_idle * detection_curve(cfg.eps_d, tau, cfg.bandwidth) + p_busy * detection_curve(
        cfg.eps_f, tau, cfg.bandwidth
    )


def transmission_probability(cfg: SensingConfig, ch: ChannelModel) -> float:
    """Probability that a sensing step ends with a transmission, at cfg.tau."""
    return float(transmission_curve(cfg, ch, cfg.tau))


def max_reception_rate(ch: ChannelModel, t_x: float) -> float:
    """Reception rate of a perfect detector, p_I * exp(-alpha t_x)."""
    p_idle, _ = occupancy_probabilities(ch)
    return p_idle * hold_probability(ch, t_x)


def reception_curve(cfg: SensingConfig, ch: ChannelModel, tau: float | FloatArray) -> float | FloatArray:
    """gamma(tau) = p_I * eta * p_d(tau)."""
    return max_reception_rate(ch, cfg.t_x) * detection_curve(cfg.eps_d, tau, cfg.bandwidth)


def reception_rate(cfg: SensingConfig, ch: ChannelModel) -> float:
    """Successful reception probability of a sensing step, at cfg.tau."""
    return float(reception_curve(cfg, ch, cfg.tau))


def energy_curve(
    cfg: SensingConfig, ch: ChannelModel, ep: EnergyParams, n: int, tau: float | FloatArray
) -> float | FloatArray:
    """Average energy per step (tau e_s + p_tx e_tx) / n when sensing every n steps."""
    tau_values = np.asarray(tau, dtype=float)
    return _collapse((tau_values * ep.e_s + np.asarray(transmission_curve(cfg, ch, tau_values)) * ep.e_tx) / n)


def slope_shape(cfg: SensingConfig, ch: ChannelModel, tau: float | FloatArray) -> float | FloatArray:
    """
    f(tau) = (eps_d - 1) exp(-(1 - eps_d)^2 W tau / 2) - rho (1 - eps_f) exp(-(1 - eps_f)^2 W tau / 2),
    with rho = alpha / beta. The sign of f decides whether transmissions grow or shrink with tau.
    """
    tau_values = np.asarray(tau, dtype=float)
    scale = cfg.bandwidth * tau_values / 2.0
    idle_term = (cfg.eps_d - 1.0) * np.exp(-((1.0 - cfg.eps_d) ** 2) * scale)
    busy_term = ch.rho * (1.0 - cfg.eps_f) * np.exp(-((1.0 - cfg.eps_f) ** 2) * scale)
    return _collapse(idle_term - busy_term)


def _sample_rate_factor(bandwidth: float, tau: np.ndarray) -> np.ndarray:
    """sqrt(W) / (2 sqrt(2 pi tau)), the chain-rule factor of d sqrt(tau W) / d tau times the Gaussian density."""
    with np.errstate(divide='ignore'):
        return math.sqrt(bandwidth) / (2.0 * np.sqrt(2.0 * math.pi * tau))


def gamma_slope(cfg: SensingConfig, ch: ChannelModel, tau: float | FloatArray) -> float | FloatArray:
    """d gamma / d tau = p_I eta (eps_d - 1) sqrt(W) / (2 sqrt(2 pi tau)) exp(-(1 - eps_d)^2 W tau / 2)."""
    tau_values = np.asarray(tau, dtype=float)
    density = (cfg.eps_d - 1.0) * np.exp(-((1.0 - cfg.eps_d) ** 2) * cfg.bandwidth * tau_values / 2.0)
    return _collapse(max_reception_rate(ch, cfg.t_x) * _sample_rate_factor(cfg.bandwidth, tau_values) * density)


def energy_slope(
    cfg: SensingConfig, ch: ChannelModel, ep: EnergyParams, n: int, tau: float | FloatArray
) -> float | FloatArray:
    """d phi_bar / d tau = (e_s + e_tx sqrt(W) f(tau) / (2 (1 + rho) sqrt(2 pi tau))) / n."""
    tau_values = np.asarray(tau, dtype=float)
    shape = np.asarray(slope_shape(cfg, ch, tau_values))
    transmit = ep.e_tx * _sample_rate_factor(cfg.bandwidth, tau_values) * shape / (1.0 + ch.rho)
    return _collapse((ep.e_s + transmit) / n)


def objective_and_derivatives(
    cfg: SensingConfig, ch: ChannelModel, ep: EnergyParams, n: int
) -> ObjectiveEvaluation:
    """
    Evaluates the per-step energy and its tau-derivatives at cfg.tau.
    :param cfg: Sensing configuration, cfg.tau > 0.
    :param ch: Channel model.
    :param ep: Energy prices.
    :param n: Sensing period in steps.
    :return: phi_bar, d phi_bar / d tau, d gamma / d tau and f(tau).
    """
    if n < 1:
        raise ValueError(f"Sensing period must be a positive integer, got {n}.")
    phi_bar = float(energy_curve(cfg, ch, ep, n, cfg.tau))
    if cfg.tau == 0.0:
        raise SingularDerivativeError("Derivatives with respect to tau are singular at tau = 0.", phi_bar=phi_bar)
    return ObjectiveEvaluation(
        phi_bar=phi_bar,
        d_phi_d_tau=float(energy_slope(cfg, ch, ep, n, cfg.tau)),
        d_gamma_d_tau=float(gamma_slope(cfg, ch, cfg.tau)),
        f_value=float(slope_shape(cfg, ch, cfg.tau)),
    )
