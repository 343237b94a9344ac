import math

import numpy as np
import pytest
from pydantic import ValidationError

from specsense.channel.models import ChannelModel, ChannelState, ChannelTrajectory
from specsense.channel.occupancy import (
    hold_probability,
    independence_diagnostics,
    occupancy_probabilities,
    residual_idle,
    sample_trajectory,
    state_at,
)
from specsense.core.exceptions import TrajectoryQueryError

HAND_MADE = ChannelTrajectory(start_state=ChannelState.IDLE, holding_times=(0.3, 0.2, 0.5), total_duration=1.0)


def test_occupancy_of_reference_channel(reference_channel):
    p_idle, p_busy = occupancy_probabilities(reference_channel)
    assert p_idle == pytest.approx(0.8)
    assert p_busy == pytest.approx(0.2)
    assert reference_channel.rho == pytest.approx(0.25)


def test_hold_probability(reference_channel):
    assert hold_probability(reference_channel, 0.05) == pytest.approx(math.exp(-0.25))
    assert hold_probability(reference_channel, 0.0) == 1.0
    with pytest.raises(ValueError):
        hold_probability(reference_channel, -1.0)


def test_invalid_rates_are_rejected():
    with pytest.raises(ValidationError, match='alpha'):
        ChannelModel(alpha=-1.0, beta=20.0)


def test_trajectory_queries():
    assert state_at(HAND_MADE, 0.1) is ChannelState.IDLE
    assert residual_idle(HAND_MADE, 0.1) == pytest.approx(0.2)
    assert state_at(HAND_MADE, 0.4) is ChannelState.BUSY
    assert residual_idle(HAND_MADE, 0.4) == 0.0
    assert state_at(HAND_MADE, 0.6) is ChannelState.IDLE
    assert residual_idle(HAND_MADE, 0.6) == pytest.approx(0.4)
    # the window end belongs to the last interval
    assert state_at(HAND_MADE, 1.0) is ChannelState.IDLE


@pytest.mark.parametrize('t', [-1e-9, 1.0 + 1e-9])
def test_queries_outside_window_fail(t):
    with pytest.raises(TrajectoryQueryError):
        state_at(HAND_MADE, t)


def test_trajectory_must_cover_window():
    with pytest.raises(ValidationError):
        ChannelTrajectory(start_state=ChannelState.BUSY, holding_times=(0.1, 0.2), total_duration=1.0)


def test_sampled_trajectory_covers_window(reference_channel, rng):
    trajectory = sample_trajectory(reference_channel, 10.0, rng, start_state=ChannelState.BUSY)
    assert trajectory.start_state is ChannelState.BUSY
    assert sum(trajectory.holding_times) >= 10.0
    # only the last interval reaches past the window
    assert sum(trajectory.holding_times[:-1]) < 10.0


def test_sampled_start_state_is_stationary(reference_channel, rng):
    draws = 5000
    idle = sum(
        sample_trajectory(reference_channel, 0.05, rng).start_state is ChannelState.IDLE for _ in range(draws)
    )
    standard_error = math.sqrt(0.8 * 0.2 / draws)
    assert abs(idle / draws - 0.8) < 4 * standard_error


def test_mean_holding_times(reference_channel, rng):
    trajectory = sample_trajectory(reference_channel, 2000.0, rng, start_state=ChannelState.IDLE)
    times = np.asarray(trajectory.holding_times[:-1])
    idle, busy = times[0::2], times[1::2]
    assert idle.mean() == pytest.approx(reference_channel.mean_idle_time, rel=0.05)
    assert busy.mean() == pytest.approx(reference_channel.mean_busy_time, rel=0.05)


def test_independence_diagnostics(reference_channel, caplog):
    assert independence_diagnostics(reference_channel, 10.0) == []
    warnings = independence_diagnostics(reference_channel, 1.0)
    assert len(warnings) == 1
    assert 'not much longer' in caplog.text
