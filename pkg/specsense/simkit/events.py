import logging
import math

import numpy as np

from specsense.channel.models import ChannelModel, ChannelState
from specsense.channel.occupancy import occupancy_probabilities, residual_idle, sample_trajectory, state_at
from specsense.sensing.detection import detection_probabilities
from specsense.sensing.models import SensingConfig
from specsense.simkit.constants import EVENT_BATCH, SENSING_FLIP_RATIO
from specsense.simkit.models import ReceptionEvent

logger = logging.getLogger(__name__)


def simulate_reception_event(sense: SensingConfig, ch: ChannelModel, rng: np.random.Generator) -> ReceptionEvent:
    """
    Simulates one sensing step on a sampled channel trajectory. The channel keeps its state during sensing; a
    packet sent on an idle channel arrives if the idle period outlasts the transmission time.
    :param sense: Detector settings at the sensing time cfg.tau.
    :param ch: Channel model.
    :param rng: Caller-owned generator.
    :return: The event class.
    """
    trajectory = sample_trajectory(ch, sense.t_x, rng)
    idle = state_at(trajectory, 0.0) is ChannelState.IDLE
    p_d, p_f = detection_probabilities(sense)
    if rng.random() >= (p_d if idle else p_f):
        return ReceptionEvent.NO_TRANSMIT
    if idle and residual_idle(trajectory, 0.0) >= sense.t_x:
        return ReceptionEvent.RECEIVED
    return ReceptionEvent.TRANSMITTED_COLLIDED


def sample_reception_events(
    sense: SensingConfig, ch: ChannelModel, rng: np.random.Generator, size: int
) -> np.ndarray:
    """
    Vectorised counterpart of simulate_reception_event: stationary state, detector decision and the residual idle
    time (exponential by memorylessness) are drawn for many independent steps at once.
    :return: Array of ReceptionEvent codes.
    """
    if size < 0:
        raise ValueError(f"Number of events must be non-negative, got {size}.")
    p_idle, _ = occupancy_probabilities(ch)
    p_d, p_f = detection_probabilities(sense)
    idle = rng.random(size) < p_idle
    declared_idle = rng.random(size) < np.where(idle, p_d, p_f)
    holds = rng.exponential(ch.mean_idle_time, size) >= sense.t_x
    received = idle & declared_idle & holds
    return np.where(
        declared_idle,
        np.where(received, ReceptionEvent.RECEIVED, ReceptionEvent.TRANSMITTED_COLLIDED),
        ReceptionEvent.NO_TRANSMIT,
    ).astype(np.int8)


def empirical_reception_rate(sense: SensingConfig, ch: ChannelModel, draws: int, seed: int) -> tuple[float, float]:
    """
    Fraction of received packets over independent sensing steps.
    :param sense: Detector settings at the sensing time cfg.tau.
    :param ch: Channel model.
    :param draws: Number of sensing steps.
    :param seed: Seed of the generator.
    :return: (rate, standard error).
    """
    if draws < 1:
        raise ValueError(f"Number of draws must be positive, got {draws}.")
    rng = np.random.default_rng(seed)
    received = 0
    remaining = draws
    while remaining > 0:
        batch = min(remaining, EVENT_BATCH)
        received += int(np.count_nonzero(sample_reception_events(sense, ch, rng, batch) == ReceptionEvent.RECEIVED))
        remaining -= batch
    rate = received / draws
    return rate, math.sqrt(rate * (1.0 - rate) / draws)


def sensing_flip_diagnostics(sense: SensingConfig, ch: ChannelModel) -> list[str]:
    """
    Checks the assumption that the channel does not change during sensing.
    :return: Warning messages (empty if the assumption holds).
    """
    limit = SENSING_FLIP_RATIO / max(ch.alpha, ch.beta)
    warnings = []
    if sense.tau > limit:
        warnings.append(
            f"Sensing time {sense.tau:g} s exceeds {limit:g} s; channel changes during sensing are not simulated."
        )
    for message in warnings:
        logger.warning(message)
    return warnings
