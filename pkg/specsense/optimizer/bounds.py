import logging
import math
from typing import Callable, Optional

from specsense.estimation.bound import bound_meets_target
from specsense.optimizer.constants import MAX_PERIOD
from specsense.optimizer.models import NBounds, ProblemSpec, SubproblemCase
from specsense.sensing.detection import max_reception_rate
from specsense.utils.linalg import spectral_radius

logger = logging.getLogger(__name__)


def stability_period_bound(spec: ProblemSpec) -> Optional[int]:
    """
    Largest period for which the loose reception rate beta / (alpha + beta) can stabilize the filter,
    ceil(ln((alpha + beta) / alpha) / (2 ln rho(A))) - 1.
    :return: The bound, or None if rho(A) <= 1.
    """
    radius = spectral_radius(spec.sys.A)
    if radius <= 1.0:
        return None
    ratio = math.log((spec.ch.alpha + spec.ch.beta) / spec.ch.alpha) / (2.0 * math.log(radius))
    return max(0, math.ceil(ratio) - 1)


def _last_meeting(meets: Callable[[int], bool], lowest: int, limit: int) -> int:
    """
    Largest period up to limit that meets the target, for a predicate that holds at lowest and is monotone:
    doubling steps bracket the first failure, bisection narrows the bracket.
    """
    good, step = lowest, 1
    while good < limit:
        candidate = min(good + step, limit)
        if not meets(candidate):
            bad = candidate
            break
        good, step = candidate, 2 * step
    else:
        return limit
    while bad - good > 1:
        middle = (good + bad) // 2
        if meets(middle):
            good = middle
        else:
            bad = middle
    return good


def target_period_bound(spec: ProblemSpec, limit: int = MAX_PERIOD) -> int:
    """
    Largest period whose averaged bound meets the target at the best achievable reception rate. The averaged bound
    grows with the period, so the first failure is located by a doubling search; the period after it is re-checked
    once in case the numerics disagree.
    :param spec: Problem.
    :param limit: Largest period searched.
    :return: n_bar_2, 0 if the target is missed even with n = 1.
    """
    gamma_max = max_reception_rate(spec.ch, spec.sense.t_x)
    target = spec.P_bar.entries

    def meets(n: int) -> bool:
        return bound_meets_target(spec.sys, gamma_max, n, target, spec.order)

    largest = 0
    while largest < limit:
        first = largest + 1
        if meets(first):
            largest = _last_meeting(meets, first, limit)
            continue
        if first + 1 <= limit and meets(first + 1):
            logger.warning(f'Averaged bound is not monotone in n around n={first}, continuing the search.')
            largest = first + 1
            continue
        return largest
    logger.warning(f'Period search reached its limit n={limit}; the target bounds n no further.')
    return largest


def n_bounds(spec: ProblemSpec) -> NBounds:
    """
    Upper bounds on the sensing period.
    :param spec: Problem.
    :return: n_bar_1 (None if unbounded), n_bar_2 and their minimum n_bar.
    """
    n_bar_1 = stability_period_bound(spec)
    n_bar_2 = target_period_bound(spec, MAX_PERIOD if n_bar_1 is None else max(MAX_PERIOD, n_bar_1 + 1))
    n_bar = n_bar_2 if n_bar_1 is None else min(n_bar_1, n_bar_2)
    if n_bar_2 == 0:
        logger.warning('Performance target is missed even when sensing every step with a perfect detector.')
    logger.info(f'Period bounds: n_bar_1={n_bar_1}, n_bar_2={n_bar_2}, n_bar={n_bar}.')
    return NBounds(n_bar_1=n_bar_1, n_bar_2=n_bar_2, n_bar=n_bar)


def classify_case(eps_d: float, eps_f: float, rho: float) -> SubproblemCase:
    """
    Shape case of the sensing-time subproblem. Conditions are checked in case order, the first match wins.
    :param eps_d: Idle-hypothesis threshold factor.
    :param eps_f: Busy-hypothesis threshold factor, 0 < eps_f < eps_d.
    :param rho: alpha / beta.
    :return: The case.
    """
    if not 0.0 < eps_f < eps_d:
        raise ValueError(f"Thresholds must satisfy eps_d > eps_f > 0, got eps_d={eps_d}, eps_f={eps_f}.")
    if rho <= 0.0:
        raise ValueError(f"rho must be positive, got {rho}.")
    if eps_d >= 1.0 and eps_f >= 1.0:
        return SubproblemCase.CASE1
    if eps_f < 1.0:
        ratio = (eps_d - 1.0) / (1.0 - eps_f)
        if rho <= ratio <= 1.0:
            return SubproblemCase.CASE1
        if ratio > 1.0:
            return SubproblemCase.CASE2
        if 0.0 <= eps_d - 1.0 < rho * (1.0 - eps_f):
            return SubproblemCase.CASE3
    return SubproblemCase.CASE4
