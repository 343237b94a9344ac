import numpy as np
import pytest

from specsense.estimation.bound import bound_meets_target
from specsense.estimation.models import CovarianceMatrix
from specsense.optimizer.models import NBounds, SubproblemCase, SubproblemResult
from specsense.optimizer.solver import period_floor, select_optimum, solve
from specsense.sensing.detection import reception_curve
from specsense.sensing.models import EnergyParams


@pytest.fixture(scope='module')
def reference_solution(reference_problem):
    return solve(reference_problem)


def test_reference_optimum_is_feasible(reference_problem, reference_solution):
    solution = reference_solution
    assert solution.feasible
    assert solution.case_id is SubproblemCase.CASE1
    assert 1 <= solution.n_star <= solution.bounds.n_bar
    assert 0.0 < solution.tau_star <= reference_problem.sense.tau_max
    assert len(solution.per_n) == solution.bounds.n_bar
    assert [result.n for result in solution.per_n] == list(range(1, solution.bounds.n_bar + 1))


def test_optimum_meets_the_target(reference_problem, reference_solution):
    solution = reference_solution
    floor = period_floor(reference_problem, solution.n_star)
    assert solution.gamma_star >= floor
    assert solution.gamma_star == pytest.approx(
        float(reception_curve(reference_problem.sense, reference_problem.ch, solution.tau_star))
    )
    assert bound_meets_target(
        reference_problem.sys, solution.gamma_star, solution.n_star, reference_problem.P_bar.entries
    )


def test_optimum_is_the_cheapest_feasible_period(reference_solution):
    phis = [result.phi for result in reference_solution.per_n if result.feasible]
    assert reference_solution.phi_star == min(phis)


def test_target_below_noise_has_no_schedule(reference_problem):
    target = CovarianceMatrix(entries=0.5 * reference_problem.sys.Q)
    solution = solve(reference_problem.model_copy(update={'P_bar': target}))
    assert not solution.feasible
    assert solution.n_star is None
    assert solution.bounds.n_bar == 0
    assert solution.per_n == ()


def test_result_does_not_depend_on_workers(reference_problem, reference_solution):
    assert solve(reference_problem, workers=4) == reference_solution


def test_workers_must_be_positive(reference_problem):
    with pytest.raises(ValueError):
        solve(reference_problem, workers=0)


def test_free_sensing_never_shortens_the_sensing_time(reference_problem, reference_solution):
    spec = reference_problem.model_copy(update={'ep': EnergyParams(e_s=0.0, e_tx=100.0)})
    free = solve(spec)
    priced = {result.n: result for result in reference_solution.per_n if result.feasible}
    for result in free.per_n:
        if result.feasible and result.n in priced:
            assert result.tau >= priced[result.n].tau - 1e-9


def test_ties_go_to_the_longer_period():
    bounds = NBounds(n_bar_1=None, n_bar_2=3, n_bar=3)
    results = [
        SubproblemResult(n=3, feasible=True, tau=1e-4, phi=10.0, gamma=0.6),
        SubproblemResult(n=1, feasible=True, tau=1e-4, phi=10.0, gamma=0.6),
        SubproblemResult(n=2, feasible=True, tau=2e-4, phi=10.0 * (1.0 + 1e-14), gamma=0.61),
    ]
    solution = select_optimum(results, bounds)
    assert solution.n_star == 3
    assert [result.n for result in solution.per_n] == [1, 2, 3]


def test_no_feasible_period_gives_an_infeasible_solution():
    bounds = NBounds(n_bar_1=2, n_bar_2=2, n_bar=2)
    results = [SubproblemResult(n=1, feasible=False), SubproblemResult(n=2, feasible=False)]
    solution = select_optimum(results, bounds)
    assert not solution.feasible
    assert solution.phi_star is None


@pytest.mark.slow
def test_looser_target_never_costs_more(reference_problem):
    previous = None
    for slack in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0):
        target = CovarianceMatrix(entries=reference_problem.P_bar.entries + slack * np.eye(2))
        solution = solve(reference_problem.model_copy(update={'P_bar': target}))
        assert solution.feasible
        if previous is not None:
            assert solution.phi_star <= previous * (1.0 + 1e-9)
        previous = solution.phi_star
