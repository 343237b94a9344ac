import csv
import json

import pytest

from specsense.cli.commands import run_command, run_sweep
from specsense.cli.config import parse_config, sweep_points
from specsense.cli.constants import EXIT_OK, EXIT_USAGE, VALIDATE_COLUMNS
from specsense.cli.main import main
from specsense.cli.models import Command
from specsense.optimizer.brute_force import brute_force_solve


def _read_csv(path):
    with path.open(encoding='utf-8', newline='') as handle:
        return list(csv.DictReader(handle))


def test_solve_reference_scenario(tmp_path):
    output = tmp_path / 'solve.csv'
    assert main(['--command', 'solve', '--output', str(output)]) == EXIT_OK
    rows = _read_csv(output)
    assert len(rows) == 1
    assert rows[0]['feasible'] == 'true'
    assert float(rows[0]['p_I']) == pytest.approx(0.8)
    assert int(rows[0]['n_star']) >= 1


def test_infeasible_target_exits_with_one(write_config, tmp_path):
    config = write_config('performance.p_bar = [[0.5, 0.0], [0.0, 0.5]]\n')
    output = tmp_path / 'solve.json'
    assert main(['--config', str(config), '--output', str(output), '--format', 'json']) == 1
    payload = json.loads(output.read_text(encoding='utf-8'))
    assert payload[0]['feasible'] is False
    assert payload[0]['n_star'] is None


def test_output_does_not_depend_on_workers(tmp_path):
    serial, threaded = tmp_path / 'serial.csv', tmp_path / 'threaded.csv'
    assert main(['--output', str(serial), '--workers', '1']) == EXIT_OK
    assert main(['--output', str(threaded), '--workers', '3']) == EXIT_OK
    assert serial.read_bytes() == threaded.read_bytes()


@pytest.mark.parametrize('text', ['channel.alpha = -1.0\n', 'channel.alpha = \n', 'unknown.key = 1\n'])
def test_bad_configuration_exits_with_two(write_config, text):
    assert main(['--config', str(write_config(text))]) == EXIT_USAGE


def test_missing_configuration_exits_with_two(tmp_path):
    assert main(['--config', str(tmp_path / 'missing.toml')]) == EXIT_USAGE


def test_invalid_worker_count_exits_with_two():
    assert main(['--workers', '0']) == EXIT_USAGE


def test_sweep_without_sweep_section_exits_with_two(tmp_path):
    assert main(['--command', 'sweep', '--output', str(tmp_path / 'sweep.csv')]) == EXIT_USAGE


@pytest.mark.slow
def test_energy_ratio_sweep_raises_the_energy(write_config, tmp_path):
    config = write_config('sweep.variable = "energy_ratio"\nsweep.values = [0.5, 1.0, 2.0, 4.0, 8.0]\n')
    output = tmp_path / 'sweep.csv'
    assert main(['--config', str(config), '--command', 'sweep', '--output', str(output)]) == EXIT_OK
    rows = _read_csv(output)
    assert [float(row['energy_ratio']) for row in rows] == [0.5, 1.0, 2.0, 4.0, 8.0]
    energies = [float(row['phi_star']) for row in rows]
    assert energies == sorted(energies)
    periods = [int(row['n_star']) for row in rows]
    assert periods == sorted(periods)
    taus = [float(row['tau_star_s']) for row in rows]
    assert all(later >= earlier * (1.0 - 1e-9) for earlier, later in zip(taus, taus[1:]))


def _constant_period_runs(rows):
    runs = [[rows[0]]]
    for row in rows[1:]:
        if row['n_star'] == runs[-1][-1]['n_star']:
            runs[-1].append(row)
        else:
            runs.append([row])
    return runs


@pytest.mark.slow
def test_idle_probability_sweep_trend():
    values = [0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95]
    cfg = parse_config(f'sweep.variable = "idle_probability"\nsweep.values = {values}\n')
    rows, feasible = run_sweep(cfg, workers=4)
    assert feasible
    assert [row['p_I'] for row in rows] == values
    periods = [row['n_star'] for row in rows]
    assert periods == sorted(periods)
    assert periods[-1] > periods[0]
    for run in _constant_period_runs(rows):
        taus = [row['tau_star_s'] for row in run]
        assert all(later <= earlier * (1.0 + 1e-6) for earlier, later in zip(taus, taus[1:]))
    assert rows[-1]['phi_star'] < rows[0]['phi_star']
    # with n fixed the shorter sensing time raises p_f, and the extra false transmissions outweigh the saved sensing
    by_idle = {row['p_I']: row for row in rows}
    assert by_idle[0.7]['n_star'] == by_idle[0.8]['n_star']
    assert by_idle[0.8]['phi_star'] > by_idle[0.7]['phi_star']
    problems = dict(sweep_points(cfg))
    for p_idle in (0.7, 0.8):
        brute = brute_force_solve(problems[p_idle])
        assert brute.n_star == by_idle[p_idle]['n_star']
        assert brute.phi_star == pytest.approx(by_idle[p_idle]['phi_star'], rel=1e-3)


@pytest.mark.slow
def test_validate_reference_optimum(write_config, tmp_path):
    config = write_config('monte_carlo.trials = 40\nmonte_carlo.horizon = 1000\nmonte_carlo.master_seed = 7\n')
    output = tmp_path / 'validate.json'
    status = main(['--config', str(config), '--command', 'validate', '--output', str(output), '--format', 'json'])
    assert status in (0, 1)
    rows = {row['quantity']: row for row in json.loads(output.read_text(encoding='utf-8'))}
    assert set(rows) == {
        'reception_rate',
        'trial_reception_rate',
        'energy_per_step',
        'avg_cov_trace_bound',
        'avg_cov_trace_target',
    }
    assert all(list(row.keys()) == list(VALIDATE_COLUMNS) for row in rows.values())
    assert rows['avg_cov_trace_target']['within_3se']
    assert rows['avg_cov_trace_bound']['within_3se']


def test_run_command_writes_the_configured_output(tmp_path):
    output = tmp_path / 'nested' / 'solve.json'
    cfg = parse_config(f'output.path = "{output.as_posix()}"\noutput.format = "json"\n')
    assert run_command(cfg, Command.SOLVE) == EXIT_OK
    assert json.loads(output.read_text(encoding='utf-8'))[0]['feasible'] is True
