import json

import pytest

from specsense.cli.constants import SOLVE_COLUMNS
from specsense.cli.models import OutputFormat
from specsense.cli.output import render, write_output
from specsense.core.exceptions import OutputError

ROWS = [
    {
        'p_I': 0.8,
        'n_star': 3,
        'tau_star_s': 5.123456789012345e-05,
        'phi_star': 27.5,
        'gamma_star': 0.61,
        'feasible': True,
    },
    {'p_I': 0.3, 'n_star': None, 'tau_star_s': None, 'phi_star': None, 'gamma_star': None, 'feasible': False},
]


def test_empty_csv_keeps_its_header():
    assert render([], OutputFormat.CSV, SOLVE_COLUMNS) == 'p_I,n_star,tau_star_s,phi_star,gamma_star,feasible\n'


def test_csv_cells():
    lines = render(ROWS, OutputFormat.CSV, SOLVE_COLUMNS).splitlines()
    assert lines[1] == '0.8,3,5.12345678901e-05,27.5,0.61,true'
    assert lines[2] == '0.3,,,,,false'


def test_json_document():
    payload = json.loads(render(ROWS, OutputFormat.JSON, SOLVE_COLUMNS))
    assert payload[0]['n_star'] == 3
    assert payload[0]['feasible'] is True
    assert payload[0]['tau_star_s'] == pytest.approx(5.12345678901e-05, rel=1e-12)
    assert payload[1]['phi_star'] is None
    assert list(payload[1].keys()) == list(SOLVE_COLUMNS)


def test_rows_must_match_the_columns():
    with pytest.raises(ValueError):
        render([{'p_I': 0.5}], OutputFormat.CSV, SOLVE_COLUMNS)


def test_written_files_are_reproducible(tmp_path):
    first, second = tmp_path / 'a' / 'out.csv', tmp_path / 'b' / 'out.csv'
    write_output(ROWS, OutputFormat.CSV, first, SOLVE_COLUMNS)
    write_output(ROWS, OutputFormat.CSV, second, SOLVE_COLUMNS)
    assert first.read_bytes() == second.read_bytes()


def test_standard_output(capsys):
    write_output(ROWS[:1], OutputFormat.CSV, None, SOLVE_COLUMNS)
    assert capsys.readouterr().out.startswith('p_I,n_star')


def test_unwritable_path(tmp_path):
    blocker = tmp_path / 'blocker'
    blocker.write_text('not a directory', encoding='utf-8')
    with pytest.raises(OutputError):
        write_output(ROWS, OutputFormat.CSV, blocker / 'out.csv', SOLVE_COLUMNS)
