import logging
from typing import Mapping, Optional

import numpy as np
import numpy.typing as npt

from specsense.optimizer.bounds import classify_case, n_bounds
from specsense.optimizer.constants import DEFAULT_TAU_GRID_SIZE, MIN_TAU_GRID_SIZE
from specsense.optimizer.models import ProblemSpec, Solution, SubproblemResult
from specsense.optimizer.solver import period_floor, select_optimum
from specsense.sensing.detection import reception_curve, transmission_curve

logger = logging.getLogger(__name__)


def brute_force_solve(
    spec: ProblemSpec,
    tau_grid_size: int = DEFAULT_TAU_GRID_SIZE,
    tau_grid: Optional[npt.ArrayLike] = None,
    gamma_floors: Optional[Mapping[int, Optional[float]]] = None,
) -> Solution:
    """
    Exhaustive reference solver on a (period, sensing time) grid.
    :param spec: Problem.
    :param tau_grid_size: Number of evenly spaced sensing times on [0, tau_max].
    :param tau_grid: Explicit sensing-time grid, overrides tau_grid_size.
    :param gamma_floors: Precomputed minimum reception rates by period; missing periods are computed.
    :return: Solution of the same shape as the analytic solver's.
    """
    if tau_grid is None:
        if tau_grid_size < MIN_TAU_GRID_SIZE:
            raise ValueError(f"Grid needs at least {MIN_TAU_GRID_SIZE} points, got {tau_grid_size}.")
        grid = np.linspace(0.0, spec.sense.tau_max, tau_grid_size)
    else:
        grid = np.atleast_1d(np.asarray(tau_grid, dtype=float))
    floors = dict(gamma_floors or {})
    case = classify_case(spec.sense.eps_d, spec.sense.eps_f, spec.ch.rho)
    bounds = n_bounds(spec)

    gammas = np.asarray(reception_curve(spec.sense, spec.ch, grid))
    # energy of one sensing period, divided by n below
    period_energy = grid * spec.ep.e_s + np.asarray(transmission_curve(spec.sense, spec.ch, grid)) * spec.ep.e_tx

    results: list[SubproblemResult] = []
    for n in range(1, bounds.n_bar + 1):
        floor = floors[n] if n in floors else period_floor(spec, n)
        if floor is None:
            results.append(SubproblemResult(n=n, feasible=False, case_id=case))
            continue
        admissible = np.flatnonzero(gammas >= floor)
        if admissible.size == 0:
            results.append(SubproblemResult(n=n, feasible=False, gamma_floor=floor, case_id=case))
            continue
        best = admissible[np.argmin(period_energy[admissible])]
        results.append(
            SubproblemResult(
                n=n,
                feasible=True,
                gamma_floor=floor,
                tau=float(grid[best]),
                phi=float(period_energy[best] / n),
                gamma=float(gammas[best]),
                case_id=case,
            )
        )
    logger.debug(f'Brute force evaluated {bounds.n_bar} periods on {grid.size} sensing times.')
    return select_optimum(results, bounds)
