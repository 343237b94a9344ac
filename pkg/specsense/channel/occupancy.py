import logging
import math
from typing import Optional

import numpy as np

from specsense.channel.constants import INDEPENDENCE_FACTOR, TRAJECTORY_CHUNK
from specsense.channel.models import ChannelModel, ChannelState, ChannelTrajectory
from specsense.core.exceptions import TrajectoryQueryError

logger = logging.getLogger(__name__)


def occupancy_probabilities(ch: ChannelModel) -> tuple[float, float]:
    """
    Stationary idle and busy probabilities.
    :param ch: Channel model.
    :return: (p_I, p_B) = (beta, alpha) / (alpha + beta).
    """
    total = ch.alpha + ch.beta
    return ch.beta / total, ch.alpha / total


def hold_probability(ch: ChannelModel, t_x: float) -> float:
    """
    Probability eta that an idle channel stays idle for at least t_x seconds (memoryless idle periods).
    :param ch: Channel model.
    :param t_x: Duration in seconds, non-negative.
    :return: exp(-alpha * t_x).
    """
    if t_x < 0:
        raise ValueError(f"Duration must be non-negative, got {t_x}.")
    return math.exp(-ch.alpha * t_x)


def sample_trajectory(
    ch: ChannelModel,
    duration: float,
    rng: np.random.Generator,
    start_state: Optional[ChannelState] = None,
) -> ChannelTrajectory:
    """
    Samples alternating exponential holding times until the window [0, duration] is covered.
    :param ch: Channel model.
    :param duration: Window length in seconds.
    :param rng: Caller-owned generator.
    :param start_state: Forced initial state; drawn from the stationary distribution if omitted.
    :return: Sampled trajectory.
    """
    if duration <= 0:
        raise ValueError(f"Duration must be positive, got {duration}.")
    if start_state is None:
        p_idle, _ = occupancy_probabilities(ch)
        start_state = ChannelState.IDLE if rng.random() < p_idle else ChannelState.BUSY
    if start_state is ChannelState.IDLE:
        first_mean, second_mean = ch.mean_idle_time, ch.mean_busy_time
    else:
        first_mean, second_mean = ch.mean_busy_time, ch.mean_idle_time

    chunks: list[np.ndarray] = []
    covered = 0.0
    while covered < duration:
        pairs = np.column_stack(
            (rng.exponential(first_mean, TRAJECTORY_CHUNK), rng.exponential(second_mean, TRAJECTORY_CHUNK))
        ).reshape(-1)
        chunks.append(pairs)
        covered += float(pairs.sum())
    times = np.maximum(np.concatenate(chunks), np.finfo(float).tiny)
    # keep intervals up to the first one that reaches the end of the window
    last = int(np.searchsorted(np.cumsum(times), duration, side='left'))
    times = times[: last + 1]
    return ChannelTrajectory(start_state=start_state, holding_times=tuple(times.tolist()), total_duration=duration)


def _interval_index(traj: ChannelTrajectory, t: float) -> int:
    """Index of the holding interval covering time t."""
    if not 0.0 <= t <= traj.total_duration:
        raise TrajectoryQueryError(f"Time {t} is outside of the sampled window [0, {traj.total_duration}].")
    index = int(np.searchsorted(traj.boundaries, t, side='right'))
    return min(index, len(traj.holding_times) - 1)


def state_at(traj: ChannelTrajectory, t: float) -> ChannelState:
    """
    :param traj: Sampled trajectory.
    :param t: Query time in seconds within [0, total_duration].
    :return: State of the interval covering t.
    """
    return traj.state_of_interval(_interval_index(traj, t))


def residual_idle(traj: ChannelTrajectory, t: float) -> float:
    """
    :param traj: Sampled trajectory.
    :param t: Query time in seconds within [0, total_duration].
    :return: Remaining time of the idle interval covering t, or 0 if the channel is busy at t.
    """
    index = _interval_index(traj, t)
    if traj.state_of_interval(index) is ChannelState.BUSY:
        return 0.0
    return float(traj.boundaries[index] - t)


def independence_diagnostics(ch: ChannelModel, sampling_period: float) -> list[str]:
    """
    Checks the assumption that the sampling period is much longer than the mean holding times, which makes the
    per-step reception outcomes independent.
    :param ch: Channel model.
    :param sampling_period: Sampling period T_s in seconds.
    :return: Warning messages (empty if the assumption holds).
    """
    longest = max(ch.mean_idle_time, ch.mean_busy_time)
    warnings = []
    if sampling_period < INDEPENDENCE_FACTOR * longest:
        warnings.append(
            f"Sampling period {sampling_period:g} s is not much longer than the mean holding time {longest:g} s; "
            "per-step channel states are treated as independent anyway."
        )
    for message in warnings:
        logger.warning(message)
    return warnings
