import logging
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Iterable, Optional

from specsense.estimation.bound import min_gamma
from specsense.optimizer.bounds import n_bounds
from specsense.optimizer.constants import TIE_RTOL
from specsense.optimizer.models import NBounds, ProblemSpec, Solution, SubproblemResult
from specsense.optimizer.subproblem import solve_subproblem

logger = logging.getLogger(__name__)


def period_floor(spec: ProblemSpec, n: int) -> Optional[float]:
    """Minimum reception rate of period n under the problem's order mode."""
    return min_gamma(spec.sys, n, spec.P_bar, order=spec.order)


def _solve_period(spec: ProblemSpec, n: int) -> SubproblemResult:
    floor = period_floor(spec, n)
    if floor is None:
        return SubproblemResult(
            n=n, feasible=False, diagnostics=(f'n={n}: target unreachable even with perfect reception.',)
        )
    return solve_subproblem(spec, n, floor)


def select_optimum(results: Iterable[SubproblemResult], bounds: NBounds) -> Solution:
    """
    Merges per-period results in period order. Energies within a relative TIE_RTOL count as equal and the larger
    period wins.
    """
    per_n = tuple(sorted(results, key=lambda result: result.n))
    best: Optional[SubproblemResult] = None
    for result in per_n:
        if not result.feasible or result.phi is None:
            continue
        if best is None or best.phi is None or result.phi <= best.phi + TIE_RTOL * abs(best.phi):
            best = result
    if best is None:
        return Solution(feasible=False, bounds=bounds, per_n=per_n)
    return Solution(
        feasible=True,
        n_star=best.n,
        tau_star=best.tau,
        phi_star=best.phi,
        gamma_star=best.gamma,
        case_id=best.case_id,
        bounds=bounds,
        per_n=per_n,
    )


def solve(spec: ProblemSpec, workers: int = 1) -> Solution:
    """
    Jointly optimal sensing period and sensing time: one sensing-time subproblem per admissible period.
    :param spec: Problem.
    :param workers: Threads solving subproblems concurrently.
    :return: The global optimum with the per-period records.
    """
    if workers < 1:
        raise ValueError(f"Number of workers must be positive, got {workers}.")
    bounds = n_bounds(spec)
    periods = range(1, bounds.n_bar + 1)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(partial(_solve_period, spec), periods))
    solution = select_optimum(results, bounds)
    if solution.feasible:
        logger.info(
            f'Optimum n*={solution.n_star}, tau*={solution.tau_star:.6g} s, phi*={solution.phi_star:.6g} '
            f'over {bounds.n_bar} periods.'
        )
    else:
        logger.info(f'No feasible schedule among {bounds.n_bar} periods.')
    return solution
