import numpy as np
import pytest

from specsense.channel.models import ChannelModel
from specsense.optimizer.brute_force import brute_force_solve
from specsense.optimizer.solver import solve
from specsense.sensing.detection import false_alarm_threshold
from specsense.sensing.models import EnergyParams, SensingConfig


def _floors(solution):
    return {result.n: result.gamma_floor for result in solution.per_n}


def _assert_agree(analytic, reference):
    assert analytic.feasible == reference.feasible
    if not analytic.feasible:
        return
    assert analytic.n_star == reference.n_star
    # the grid never beats the continuous optimum and gets within its spacing
    assert analytic.phi_star <= reference.phi_star * (1.0 + 1e-6)
    assert reference.phi_star == pytest.approx(analytic.phi_star, rel=1e-3)


def test_agrees_with_the_analytic_solver(reference_problem):
    analytic = solve(reference_problem)
    reference = brute_force_solve(reference_problem, gamma_floors=_floors(analytic))
    _assert_agree(analytic, reference)
    assert reference.bounds == analytic.bounds


def test_single_point_grid_reproduces_the_optimum(reference_problem):
    analytic = solve(reference_problem)
    reference = brute_force_solve(reference_problem, tau_grid=[analytic.tau_star], gamma_floors=_floors(analytic))
    assert reference.n_star == analytic.n_star
    assert reference.phi_star == pytest.approx(analytic.phi_star, rel=1e-12)


def test_coarse_grids_are_rejected(reference_problem):
    with pytest.raises(ValueError):
        brute_force_solve(reference_problem, tau_grid_size=999)


@pytest.mark.slow
def test_agrees_on_random_scenarios(reference_problem, rng):
    for _ in range(20):
        eps_d = rng.uniform(1.1, 1.4)
        sense = SensingConfig(
            tau_max=0.02,
            bandwidth=2e6,
            eps_d=eps_d,
            eps_f=false_alarm_threshold(eps_d, -3.0),
            t_x=0.05,
        )
        e_s = 100.0
        energy = EnergyParams(e_s=e_s, e_tx=e_s * float(np.exp(rng.uniform(np.log(0.5), np.log(8.0)))))
        channel = ChannelModel(alpha=rng.uniform(2.0, 6.0), beta=rng.uniform(20.0, 40.0))
        spec = reference_problem.model_copy(update={'sense': sense, 'ep': energy, 'ch': channel})
        analytic = solve(spec)
        _assert_agree(analytic, brute_force_solve(spec, gamma_floors=_floors(analytic)))
