import logging
from typing import Iterator, Optional

import numpy as np
import scipy.optimize

from specsense.core.exceptions import ConvergenceError, InstabilityError
from specsense.dynamics.models import LinearSystem
from specsense.estimation.constants import (
    BOUND_MAX_ITER,
    BOUND_TOL,
    FIXED_POINT_START,
    FIXED_POINT_XTOL,
    MIN_GAMMA_TOL,
    POLISH_ITER,
    ROUNDING_ULPS,
)
from specsense.estimation.covariance import bound_step, predict_cov
from specsense.estimation.models import CovarianceMatrix
from specsense.utils.linalg import (
    OrderMode,
    bisect_boundary,
    is_psd,
    loewner_leq,
    precedes,
    spectral_radius,
    symmetrize,
)

logger = logging.getLogger(__name__)


def _check_arguments(gamma: float, n: int) -> None:
    """Validates a (reception rate, sensing period) pair."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"Reception rate must lie in [0, 1], got {gamma}.")
    if n < 1:
        raise ValueError(f"Sensing period must be a positive integer, got {n}.")


def is_stable(sys: LinearSystem, gamma: float, n: int) -> bool:
    """
    Stability of the expected covariance under periodic sensing: (1 - gamma) rho(A)^(2n) < 1.
    :param sys: Plant.
    :param gamma: Reception rate of a sensing step.
    :param n: Sensing period.
    :return: Whether the expected covariance stays bounded.
    """
    _check_arguments(gamma, n)
    return (1.0 - gamma) * spectral_radius(sys.A) ** (2 * n) < 1.0


def stability_threshold(sys: LinearSystem, n: int) -> float:
    """Infimum of the stable reception rates for period n, max(0, 1 - rho(A)^(-2n))."""
    radius = spectral_radius(sys.A)
    if radius <= 1.0:
        return 0.0
    return 1.0 - radius ** (-2 * n)


def _period_map(sys: LinearSystem, gamma: float, n: int, Z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One sensing period of the bound recursion: a gamma-corrected step followed by n - 1 blind steps."""
    Y = bound_step(Z, sys, True, gamma)
    total = Y.copy()
    for _ in range(n - 1):
        Y = predict_cov(Y, sys)
        total += Y
    return Y, total / n


def _bound_cycles(
    sys: LinearSystem, gamma: float, n: int, initial: np.ndarray
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """
    Iterates the period map.
    :return: Generator of (bound right before the next sensing step, average over the period's n bounds).
    """
    Z = symmetrize(initial)
    while True:
        Z, average = _period_map(sys, gamma, n, Z)
        yield Z, average


def _converged(previous: np.ndarray, current: np.ndarray, tol: float) -> bool:
    """Max-abs change below tol, or below the rounding level of the entries."""
    resolution = ROUNDING_ULPS * np.finfo(float).eps * float(np.max(np.abs(current)))
    return float(np.max(np.abs(current - previous))) < tol + resolution


def _solve_fixed_point(
    sys: LinearSystem, gamma: float, n: int, start: np.ndarray, tol: float
) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """
    Solves Z = F(Z) for the period map F with a hybrid Newton method started from an iterate of the bound sequence,
    then polishes the root with plain iterations.
    :return: (limit at sensing instants, averaged bound on the limit cycle), or None if the root is not the limit.
    """
    q = start.shape[0]
    rows, cols = np.triu_indices(q)

    def unpack(x: np.ndarray) -> np.ndarray:
        Z = np.zeros((q, q))
        Z[rows, cols] = x
        Z[cols, rows] = x
        return Z

    def residual(x: np.ndarray) -> np.ndarray:
        return _period_map(sys, gamma, n, unpack(x))[0][rows, cols] - x

    try:
        result = scipy.optimize.root(residual, start[rows, cols], method='hybr', options={'xtol': FIXED_POINT_XTOL})
    except np.linalg.LinAlgError:
        return None
    if not result.success:
        logger.debug(f'Fixed point solve for gamma={gamma:.9g}, n={n} stopped early: {result.message}')
    Z = unpack(result.x)
    # the bound sequence from Q increases, so its limit lies above every iterate
    if not (is_psd(Z) and loewner_leq(start, Z)):
        return None
    for _ in range(POLISH_ITER):
        Z_next, average = _period_map(sys, gamma, n, Z)
        if _converged(Z, Z_next, tol):
            return Z_next, average
        Z = Z_next
    return None


def _limit(
    sys: LinearSystem,
    gamma: float,
    n: int,
    initial: np.ndarray,
    tol: float,
    max_iter: int,
    P_bar: Optional[np.ndarray] = None,
    order: OrderMode = OrderMode.LOEWNER,
) -> tuple[Optional[np.ndarray], bool]:
    """
    Runs the bound recursion to its limit cycle. Slowly contracting cycles (gamma close to the stability threshold)
    are finished by the fixed point solver.
    :param P_bar: Optional target; the run stops early once a period average exceeds it.
    :return: (averaged bound or None, whether the target was exceeded).
    """
    Z = initial
    for iteration, (Z_next, average) in enumerate(_bound_cycles(sys, gamma, n, Z), start=1):
        if P_bar is not None and not precedes(average, P_bar, order):
            return None, True
        if _converged(Z, Z_next, tol):
            logger.debug(f'Averaged bound for gamma={gamma:.9g}, n={n} converged after {iteration} periods.')
            return average, False
        if iteration >= max_iter:
            break
        if iteration == FIXED_POINT_START:
            solved = _solve_fixed_point(sys, gamma, n, Z_next, tol)
            if solved is not None:
                logger.debug(f'Averaged bound for gamma={gamma:.9g}, n={n} solved as a fixed point.')
                limit = solved[1]
                return limit, P_bar is not None and not precedes(limit, P_bar, order)
        Z = Z_next
    return None, False


def average_bound(
    sys: LinearSystem,
    gamma: float,
    n: int,
    tol: float = BOUND_TOL,
    max_iter: int = BOUND_MAX_ITER,
    initial: Optional[np.ndarray] = None,
) -> CovarianceMatrix:
    """
    Long-run average of the bound sequence under sensing period n, computed on its limit cycle.
    :param sys: Plant.
    :param gamma: Reception rate of a sensing step.
    :param n: Sensing period.
    :param tol: Max-abs change of the bound at sensing instants that ends the iteration.
    :param max_iter: Maximal number of sensing periods.
    :param initial: Bound right before the first sensing step, Q by default.
    :return: The averaged bound Y_bar(gamma, n).
    """
    if not is_stable(sys, gamma, n):
        raise InstabilityError(f"Expected covariance diverges for gamma={gamma}, n={n}.")
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}.")
    Z = sys.Q if initial is None else np.asarray(initial, dtype=float)
    average, _ = _limit(sys, gamma, n, Z, tol, max_iter)
    if average is None:
        raise ConvergenceError(f"Averaged bound for gamma={gamma}, n={n} did not converge in {max_iter} periods.")
    return CovarianceMatrix(entries=average)


def bound_meets_target(
    sys: LinearSystem,
    gamma: float,
    n: int,
    P_bar: np.ndarray,
    order: OrderMode = OrderMode.LOEWNER,
    tol: float = BOUND_TOL,
    max_iter: int = BOUND_MAX_ITER,
) -> bool:
    """
    Whether the averaged bound satisfies Y_bar(gamma, n) <= P_bar. Starting from Q the bound increases monotonically,
    so the check stops as soon as a running period average exceeds the target.
    :return: False for unstable pairs and exceeded targets.
    """
    if not is_stable(sys, gamma, n):
        return False
    average, exceeded = _limit(sys, gamma, n, sys.Q, tol, max_iter, P_bar, order)
    if exceeded:
        return False
    if average is None:
        logger.warning(f'Bound for gamma={gamma:.9g}, n={n} still below the target but unresolved after {max_iter} '
                       f'periods, counted as infeasible.')
        return False
    return True


def min_gamma(
    sys: LinearSystem,
    n: int,
    P_bar: CovarianceMatrix | np.ndarray,
    tol: float = MIN_GAMMA_TOL,
    order: OrderMode = OrderMode.LOEWNER,
) -> Optional[float]:
    """
    Smallest reception rate whose averaged bound meets the performance target, by bisection on the monotone
    feasibility predicate.
    :param sys: Plant.
    :param n: Sensing period.
    :param P_bar: Performance target.
    :param tol: Bisection width in gamma.
    :param order: Matrix inequality semantics.
    :return: gamma_min(n), or None if even gamma = 1 misses the target.
    """
    if n < 1:
        raise ValueError(f"Sensing period must be a positive integer, got {n}.")
    target = P_bar.entries if isinstance(P_bar, CovarianceMatrix) else np.asarray(P_bar, dtype=float)

    def feasible(gamma: float) -> bool:
        return bound_meets_target(sys, gamma, n, target, order)

    if not feasible(1.0):
        logger.debug(f'Target unreachable for n={n} even with perfect reception.')
        return None
    lowest = stability_threshold(sys, n)
    if feasible(lowest):
        return lowest
    return bisect_boundary(feasible, feasible_end=1.0, infeasible_end=lowest, tol=tol)
