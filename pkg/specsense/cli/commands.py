import logging

from specsense.channel.occupancy import occupancy_probabilities
from specsense.cli.config import build_problem, sweep_points
from specsense.cli.constants import (
    EXIT_INFEASIBLE,
    EXIT_OK,
    RECEPTION_DRAWS_PER_TRIAL,
    SE_MULTIPLIER,
    SOLVE_COLUMNS,
    VALIDATE_COLUMNS,
)
from specsense.cli.models import Command, ExperimentConfig
from specsense.cli.output import Row, write_output
from specsense.core.exceptions import ConfigError
from specsense.estimation.bound import average_bound
from specsense.optimizer.models import ProblemSpec, Solution
from specsense.optimizer.solver import solve
from specsense.simkit.events import empirical_reception_rate
from specsense.simkit.trials import monte_carlo

logger = logging.getLogger(__name__)


def solution_row(first_column: str, value: float, solution: Solution) -> Row:
    """One result row; the first column holds the swept value."""
    return {
        first_column: value,
        'n_star': solution.n_star,
        'tau_star_s': solution.tau_star,
        'phi_star': solution.phi_star,
        'gamma_star': solution.gamma_star,
        'feasible': solution.feasible,
    }


def _report_infeasible(solution: Solution, label: str) -> None:
    """Logs the per-period diagnostics of an infeasible problem."""
    logger.warning(f'{label}: no feasible schedule (n_bar={solution.bounds.n_bar}).')
    for result in solution.per_n:
        for message in result.diagnostics:
            logger.warning(f'{label}: {message}')


def _solve_and_report(spec: ProblemSpec, label: str, workers: int) -> Solution:
    solution = solve(spec, workers=workers)
    if not solution.feasible:
        _report_infeasible(solution, label)
    return solution


def run_solve(cfg: ExperimentConfig, workers: int) -> tuple[list[Row], bool]:
    spec = build_problem(cfg)
    solution = _solve_and_report(spec, 'solve', workers)
    p_idle, _ = occupancy_probabilities(spec.ch)
    return [solution_row('p_I', p_idle, solution)], solution.feasible


def sweep_columns(cfg: ExperimentConfig) -> tuple[str, ...]:
    """Solve columns with the first one renamed after the swept variable."""
    if cfg.sweep is None:
        raise ConfigError("Invalid configuration: the sweep command needs sweep.variable and sweep.values.")
    return (cfg.sweep.variable.column, *SOLVE_COLUMNS[1:])


def run_sweep(cfg: ExperimentConfig, workers: int) -> tuple[list[Row], bool]:
    column = sweep_columns(cfg)[0]
    points = sweep_points(cfg)
    rows = []
    feasible = True
    for value, spec in points:
        logger.info(f'Sweep point {column}={value:g}.')
        solution = _solve_and_report(spec, f'{column}={value:g}', workers)
        rows.append(solution_row(column, value, solution))
        feasible = feasible and solution.feasible
    return rows, feasible


def _comparison(quantity: str, analytic: float, empirical: float, standard_error: float, one_sided: bool) -> Row:
    """Row comparing a model value to a Monte Carlo estimate; one-sided rows only require empirical <= analytic."""
    slack = SE_MULTIPLIER * standard_error
    within = empirical <= analytic + slack if one_sided else abs(empirical - analytic) <= slack
    return {
        'quantity': quantity,
        'analytic': analytic,
        'empirical': empirical,
        'standard_error': standard_error,
        'within_3se': bool(within),
    }


def run_validate(cfg: ExperimentConfig, workers: int) -> tuple[list[Row], bool]:
    """
    Solves the problem and checks the model at the optimum against Monte Carlo trials.
    :return: Comparison rows and whether every comparison passed.
    """
    spec = build_problem(cfg)
    solution = _solve_and_report(spec, 'validate', workers)
    if not solution.feasible:
        return [], False
    assert solution.n_star is not None and solution.tau_star is not None
    assert solution.gamma_star is not None and solution.phi_star is not None
    mc = cfg.monte_carlo
    summary = monte_carlo(
        spec, solution.n_star, solution.tau_star, mc.trials, mc.horizon, mc.master_seed, workers=workers
    )
    rate, rate_error = empirical_reception_rate(
        spec.sense.with_tau(solution.tau_star), spec.ch, mc.trials * RECEPTION_DRAWS_PER_TRIAL, mc.master_seed
    )
    bound_trace = average_bound(spec.sys, solution.gamma_star, solution.n_star).trace
    # a horizon that is not a multiple of n_star holds fewer sensing steps than horizon / n_star
    energy = solution.phi_star * solution.n_star * (mc.horizon // solution.n_star) / mc.horizon
    rows = [
        _comparison('reception_rate', solution.gamma_star, rate, rate_error, one_sided=False),
        _comparison(
            'trial_reception_rate',
            solution.gamma_star,
            summary.empirical_gamma,
            summary.gamma_standard_error,
            one_sided=False,
        ),
        _comparison(
            'energy_per_step',
            energy,
            summary.energy_per_step.mean,
            summary.energy_per_step.standard_error,
            one_sided=False,
        ),
        _comparison(
            'avg_cov_trace_bound',
            bound_trace,
            summary.avg_cov_trace.mean,
            summary.avg_cov_trace.standard_error,
            one_sided=True,
        ),
        _comparison(
            'avg_cov_trace_target',
            spec.P_bar.trace,
            summary.avg_cov_trace.mean,
            summary.avg_cov_trace.standard_error,
            one_sided=True,
        ),
    ]
    return rows, all(row['within_3se'] for row in rows)


def run_command(cfg: ExperimentConfig, command: Command, workers: int = 1) -> int:
    """
    Runs one command and writes its rows to the configured output.
    :param cfg: Configuration.
    :param command: solve, sweep or validate.
    :param workers: Threads for subproblems and Monte Carlo trials.
    :return: Exit status, 0 iff every result is feasible (and, for validate, every comparison passed).
    """
    if command is Command.SOLVE:
        rows, success = run_solve(cfg, workers)
        columns = SOLVE_COLUMNS
    elif command is Command.SWEEP:
        rows, success = run_sweep(cfg, workers)
        columns = sweep_columns(cfg)
    else:
        rows, success = run_validate(cfg, workers)
        columns = VALIDATE_COLUMNS
    write_output(rows, cfg.output.format, cfg.output.path, columns)
    status = EXIT_OK if success else EXIT_INFEASIBLE
    logger.info(f'Command {command} finished with status {status}.')
    return status
