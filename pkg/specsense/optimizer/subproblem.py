import logging
from typing import Optional

import numpy as np
from scipy import optimize

from specsense.optimizer.bounds import classify_case
from specsense.optimizer.constants import (
    STATIONARY_SCAN_FLOOR,
    STATIONARY_SCAN_POINTS,
    TAU_XTOL,
)
from specsense.optimizer.models import ProblemSpec, SubproblemCase, SubproblemResult
from specsense.sensing.detection import energy_curve, energy_slope, reception_curve
from specsense.utils.linalg import bisect_boundary

logger = logging.getLogger(__name__)


def _gamma(spec: ProblemSpec, tau: float) -> float:
    return float(reception_curve(spec.sense, spec.ch, tau))


def reception_boundary(spec: ProblemSpec, gamma_floor: float) -> Optional[float]:
    """
    End of the feasible sensing-time interval {tau in [0, tau_max] : gamma(tau) >= gamma_floor}. gamma is monotone in
    tau, so the feasible set is an interval touching 0 (eps_d < 1) or tau_max (eps_d > 1).
    :param spec: Problem.
    :param gamma_floor: Minimum reception rate.
    :return: tau_gamma, the feasible end point closest to the boundary, or None if no tau is feasible.
    """
    tau_max = spec.sense.tau_max

    def feasible(tau: float) -> bool:
        return _gamma(spec, tau) >= gamma_floor

    at_zero, at_max = feasible(0.0), feasible(tau_max)
    if not (at_zero or at_max):
        return None
    if at_zero and at_max:
        # whole interval feasible; the boundary sits at the end gamma moves away from
        return 0.0 if spec.sense.eps_d >= 1.0 else tau_max
    if at_max:
        return bisect_boundary(feasible, feasible_end=tau_max, infeasible_end=0.0, tol=TAU_XTOL)
    return bisect_boundary(feasible, feasible_end=0.0, infeasible_end=tau_max, tol=TAU_XTOL)


def stationary_points(spec: ProblemSpec, n: int) -> tuple[list[float], list[str]]:
    """
    Roots of d phi_bar / d tau on (0, tau_max]: sign changes on a log-spaced scan, refined by bisection.
    :return: The roots and the diagnostics of brackets that could not be refined.
    """
    tau_max = spec.sense.tau_max
    grid = np.geomspace(tau_max * STATIONARY_SCAN_FLOOR, tau_max, STATIONARY_SCAN_POINTS)
    slopes = np.asarray(energy_slope(spec.sense, spec.ch, spec.ep, n, grid))
    roots: list[float] = [float(tau) for tau, slope in zip(grid, slopes) if slope == 0.0]
    diagnostics: list[str] = []

    def slope_at(tau: float) -> float:
        return float(energy_slope(spec.sense, spec.ch, spec.ep, n, tau))

    for index in np.flatnonzero(slopes[:-1] * slopes[1:] < 0.0):
        low, high = float(grid[index]), float(grid[index + 1])
        try:
            roots.append(float(optimize.bisect(slope_at, low, high, xtol=TAU_XTOL)))
        except (ValueError, RuntimeError) as error:
            message = f'n={n}: stationary point in [{low:.6g}, {high:.6g}] skipped ({error}).'
            logger.warning(message)
            diagnostics.append(message)
    return sorted(roots), diagnostics


def candidate_taus(
    spec: ProblemSpec, n: int, case: SubproblemCase, tau_gamma: float
) -> tuple[list[float], list[str]]:
    """Sensing times compared for one period, by case."""
    candidates = [tau_gamma, spec.sense.tau_max]
    if case is SubproblemCase.CASE1:
        return candidates, []
    roots, diagnostics = stationary_points(spec, n)
    if not roots:
        diagnostics.append(f'n={n}: no stationary point of the energy in (0, {spec.sense.tau_max:.6g}].')
    candidates.extend(roots)
    if case is SubproblemCase.CASE2:
        candidates.append(0.0)
    return candidates, diagnostics


def solve_subproblem(spec: ProblemSpec, n: int, gamma_floor: float) -> SubproblemResult:
    """
    Minimizes the energy per step over the sensing time for a fixed period, subject to gamma(tau) >= gamma_floor.
    :param spec: Problem.
    :param n: Sensing period.
    :param gamma_floor: Minimum reception rate of the period, as returned by min_gamma.
    :return: The optimal sensing time and energy, or an infeasible record.
    """
    if n < 1:
        raise ValueError(f"Sensing period must be a positive integer, got {n}.")
    case = classify_case(spec.sense.eps_d, spec.sense.eps_f, spec.ch.rho)
    tau_gamma = reception_boundary(spec, gamma_floor)
    if tau_gamma is None:
        message = f'n={n}: reception floor {gamma_floor:.6g} is not reachable on [0, {spec.sense.tau_max:.6g}].'
        logger.debug(message)
        return SubproblemResult(n=n, feasible=False, gamma_floor=gamma_floor, case_id=case, diagnostics=(message,))

    candidates, diagnostics = candidate_taus(spec, n, case, tau_gamma)
    in_range = {tau for tau in candidates if 0.0 <= tau <= spec.sense.tau_max}
    feasible = sorted(tau for tau in in_range if _gamma(spec, tau) >= gamma_floor)
    if not feasible:
        diagnostics.append(f'n={n}: every candidate violates the reception floor {gamma_floor:.6g}.')
        return SubproblemResult(
            n=n,
            feasible=False,
            gamma_floor=gamma_floor,
            case_id=case,
            candidates=tuple(sorted(set(candidates))),
            diagnostics=tuple(diagnostics),
        )
    energies = np.asarray(energy_curve(spec.sense, spec.ch, spec.ep, n, np.asarray(feasible)))
    best = int(np.argmin(energies))
    tau = feasible[best]
    logger.debug(f'n={n}: case {int(case)}, tau={tau:.9g}, phi={energies[best]:.9g}.')
    return SubproblemResult(
        n=n,
        feasible=True,
        gamma_floor=gamma_floor,
        tau=tau,
        phi=float(energies[best]),
        gamma=_gamma(spec, tau),
        case_id=case,
        candidates=tuple(sorted(set(candidates))),
        diagnostics=tuple(diagnostics),
    )
