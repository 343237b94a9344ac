import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from specsense.estimation.covariance import correct_cov
from specsense.optimizer.models import ProblemSpec
from specsense.simkit.constants import DIVERGENCE_TRACE, MIN_HORIZON_PERIODS
from specsense.simkit.events import sample_reception_events, sensing_flip_diagnostics
from specsense.simkit.models import FieldSummary, MonteCarloSummary, ReceptionEvent, TrialResult

logger = logging.getLogger(__name__)


def _sensing_outcomes(
    spec: ProblemSpec, tau: float, count: int, rng: np.random.Generator, reception_rate: Optional[float]
) -> tuple[np.ndarray, np.ndarray]:
    """(transmitted, received) flags of the sensing steps of one trial."""
    if reception_rate is None:
        events = sample_reception_events(spec.sense.with_tau(tau), spec.ch, rng, count)
        return events != ReceptionEvent.NO_TRANSMIT, events == ReceptionEvent.RECEIVED
    return np.ones(count, dtype=bool), rng.random(count) < reception_rate


def run_trial(
    spec: ProblemSpec,
    n: int,
    tau: float,
    horizon: int,
    rng: np.random.Generator,
    reception_rate: Optional[float] = None,
) -> TrialResult:
    """
    Simulates the sensor and the remote estimator's covariance for steps 1..horizon, sensing whenever k is a
    multiple of n.
    :param spec: Problem holding plant, channel, detector and energy prices.
    :param n: Sensing period.
    :param tau: Sensing time in seconds.
    :param horizon: Number of steps.
    :param rng: Caller-owned generator.
    :param reception_rate: If given, every sensing step transmits and arrives with this probability.
    :return: Averages and counters of the run.
    """
    if n < 1:
        raise ValueError(f"Sensing period must be a positive integer, got {n}.")
    if horizon < n:
        raise ValueError(f"Horizon {horizon} is shorter than the sensing period {n}.")
    if reception_rate is not None and not 0.0 <= reception_rate <= 1.0:
        raise ValueError(f"Reception rate must lie in [0, 1], got {reception_rate}.")
    if horizon < MIN_HORIZON_PERIODS * n:
        logger.warning(f'Horizon {horizon} covers fewer than {MIN_HORIZON_PERIODS} sensing periods of {n} steps.')
    sensing_events = horizon // n
    transmitted, received = _sensing_outcomes(spec, tau, sensing_events, rng, reception_rate)

    P = spec.sys.Q
    traces: list[float] = []
    diverged = False
    events_done = attempted = delivered = 0
    for k in range(1, horizon + 1):
        trace = float(np.trace(P))
        if not math.isfinite(trace) or trace > DIVERGENCE_TRACE:
            diverged = True
            logger.debug(f'Trial diverged at step {k} with covariance trace {trace:.3g}.')
            break
        traces.append(trace)
        arrived = False
        if k % n == 0:
            attempted += int(transmitted[events_done])
            arrived = bool(received[events_done])
            delivered += int(arrived)
            events_done += 1
        P = correct_cov(P, spec.sys, arrived)

    steps = len(traces)
    energy = events_done * tau * spec.ep.e_s + attempted * spec.ep.e_tx
    return TrialResult(
        avg_cov_trace=math.fsum(traces) / steps,
        energy_per_step=energy / steps,
        packets_attempted=attempted,
        packets_received=delivered,
        sensing_events=events_done,
        horizon=horizon,
        peak_cov_trace=max(traces),
        diverged=diverged,
    )


def summarize(values: Sequence[float]) -> FieldSummary:
    """Mean and standard error of the mean, with compensated sums."""
    count = len(values)
    mean = math.fsum(values) / count
    if count == 1:
        return FieldSummary(mean=mean, standard_error=0.0)
    variance = math.fsum((value - mean) ** 2 for value in values) / (count - 1)
    return FieldSummary(mean=mean, standard_error=math.sqrt(variance / count))


def aggregate(results: Sequence[TrialResult]) -> MonteCarloSummary:
    """Summary of trials; independent of the order the trials finished in."""
    if not results:
        raise ValueError("At least one trial is needed.")
    total_events = sum(result.sensing_events for result in results)
    total_received = sum(result.packets_received for result in results)
    ratios = [result.packets_received / result.sensing_events for result in results if result.sensing_events]
    return MonteCarloSummary(
        trials=len(results),
        avg_cov_trace=summarize([result.avg_cov_trace for result in results]),
        energy_per_step=summarize([result.energy_per_step for result in results]),
        packets_attempted=summarize([float(result.packets_attempted) for result in results]),
        packets_received=summarize([float(result.packets_received) for result in results]),
        empirical_gamma=total_received / total_events if total_events else 0.0,
        gamma_standard_error=summarize(ratios).standard_error if ratios else 0.0,
        diverged_trials=sum(result.diverged for result in results),
    )


def monte_carlo(
    spec: ProblemSpec,
    n: int,
    tau: float,
    trials: int,
    horizon: int,
    master_seed: int,
    workers: int = 1,
    reception_rate: Optional[float] = None,
) -> MonteCarloSummary:
    """
    Runs independent trials. Trial i draws from the i-th child of the master seed, so the summary does not depend
    on the number of workers.
    :param spec: Problem.
    :param n: Sensing period.
    :param tau: Sensing time in seconds.
    :param trials: Number of trials.
    :param horizon: Steps per trial.
    :param master_seed: Root of the per-trial seeds.
    :param workers: Threads running trials concurrently.
    :param reception_rate: Forced reception probability, see run_trial.
    :return: Aggregated summary.
    """
    if trials < 1:
        raise ValueError(f"Number of trials must be positive, got {trials}.")
    if workers < 1:
        raise ValueError(f"Number of workers must be positive, got {workers}.")
    sensing_flip_diagnostics(spec.sense.with_tau(tau), spec.ch)
    seeds = np.random.SeedSequence(master_seed).spawn(trials)

    def trial(seed: np.random.SeedSequence) -> TrialResult:
        return run_trial(spec, n, tau, horizon, np.random.default_rng(seed), reception_rate)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(trial, seeds))
    summary = aggregate(results)
    if summary.diverged_trials:
        logger.warning(f'{summary.diverged_trials} of {trials} trials diverged.')
    logger.info(
        f'Monte Carlo n={n}, tau={tau:.6g}: gamma={summary.empirical_gamma:.6f}, '
        f'trace={summary.avg_cov_trace.mean:.6g}, energy={summary.energy_per_step.mean:.6g}.'
    )
    return summary
