"""
Tests for the command-line interface.
"""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from cli import EXIT_INPUT_ERROR, EXIT_LAW_FAILURE, cli
from config import ENV_MAPPINGS
from interval_cuts import CutFamily
from truth_value import TruthValue, triangle_tv


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ENV_MAPPINGS:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def workdir(runner, tmp_path):
    with runner.isolated_filesystem(temp_dir=tmp_path) as path:
        Path('f.json').write_text(json.dumps(triangle_tv(0.125, 0.375, 0.625).to_dict()))
        Path('g.json').write_text(json.dumps(triangle_tv(0.25, 0.5, 0.875).to_dict()))
        yield Path(path)


def invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def test_eval(runner, workdir):
    result = invoke(runner, 'eval', '--f', 'f.json', '--x', '0.25', '--x', '3/8')
    assert result.exit_code == 0
    assert '0.500000' in result.output
    assert '1.000000' in result.output


def test_cuts_json_to_stdout(runner, workdir):
    result = invoke(runner, 'cuts', '--f', 'f.json', '--m', '16')
    assert result.exit_code == 0
    family = CutFamily.from_dict(json.loads(result.output))
    assert len(family) == 16
    assert family.cuts[-1].lo == family.cuts[-1].hi == 0.375


def test_cuts_csv_file(runner, workdir):
    result = invoke(runner, 'cuts', '--f', 'f.json', '--m', '16', '--format', 'csv',
                    '--output', 'cuts.csv')
    assert result.exit_code == 0
    assert Path('cuts.csv').read_text().splitlines()[0] == 'alpha,lo,hi'


def test_convolve_cut_engine(runner, workdir):
    result = invoke(runner, 'convolve', '--f', 'f.json', '--g', 'g.json', '--star', 'min',
                    '--tri', 'product', '--m', '32', '--n', '64', '--output', 'fg.json',
                    '--staircase-csv', 'staircase.csv')
    assert result.exit_code == 0
    family = CutFamily.from_dict(json.loads(Path('fg.json').read_text()))
    assert family.is_nested()
    assert len(Path('staircase.csv').read_text().splitlines()) == 66


def test_convolve_oracle_csv(runner, workdir):
    result = invoke(runner, 'convolve', '--f', 'f.json', '--g', 'g.json', '--star', 'luk',
                    '--tri', 'nm', '--engine', 'oracle', '--n', '64', '--output', 'fg.csv')
    assert result.exit_code == 0
    assert Path('fg.csv').read_text().splitlines()[0] == 'x,value,witness_a,witness_b'


def test_convolve_outside_engine_contract(runner, workdir):
    result = invoke(runner, 'convolve', '--f', 'f.json', '--g', 'g.json', '--star', 'drastic',
                    '--tri', 'min', '--m', '32')
    assert result.exit_code == EXIT_INPUT_ERROR
    assert 'oracle' in result.output


def test_meet_output_is_reproducible(runner, workdir):
    for name in ('one.json', 'two.json'):
        assert invoke(runner, 'meet', '--f', 'f.json', '--g', 'g.json', '--output', name).exit_code == 0
    assert Path('one.json').read_bytes() == Path('two.json').read_bytes()
    assert TruthValue.from_dict(json.loads(Path('one.json').read_text())).properties().in_lu


def test_order(runner, workdir):
    result = invoke(runner, 'order', '--f', 'f.json', '--g', 'g.json', '--m', '16')
    assert result.exit_code == 0
    assert 'f <= g' in result.output


def test_missing_input_file(runner, workdir):
    result = invoke(runner, 'eval', '--f', 'missing.json', '--x', '0.5')
    assert result.exit_code == EXIT_INPUT_ERROR


def test_unknown_tnorm(runner, workdir):
    result = invoke(runner, 'convolve', '--f', 'f.json', '--g', 'g.json', '--star', 'hamacher',
                    '--tri', 'min')
    assert result.exit_code == EXIT_INPUT_ERROR


def test_not_in_lu(runner, workdir):
    Path('bad.json').write_text(json.dumps(
        TruthValue([0, 0.5, 1], [0, 0, 0], [(0, 1), (1, 0)]).to_dict()))
    result = invoke(runner, 'cuts', '--f', 'bad.json', '--m', '16')
    assert result.exit_code == EXIT_INPUT_ERROR


def test_bad_config(runner, workdir):
    Path('bad.yaml').write_text('grid:\n  levels: 4\n')
    result = invoke(runner, '--config', 'bad.yaml', 'zoo')
    assert result.exit_code == EXIT_INPUT_ERROR


def test_check_tr(runner, workdir):
    result = invoke(runner, 'check-tr', '--star', 'product', '--tri', 'drastic', '--trials', '5',
                    '--output', 'tr.json')
    assert result.exit_code == 0
    data = json.loads(Path('tr.json').read_text())
    assert [r['law'] for r in data['reports']] == ['J_closed', 'J2_closed', 'boundary_law']


def test_check_axioms_pass(runner, workdir):
    result = invoke(runner, 'check-axioms', '--star', 'min', '--tri', 'product', '--trials', '2',
                    '--m', '32', '--n', '32', '--seed', '0')
    assert result.exit_code == 0


def test_check_axioms_falls_back_to_oracle(runner, workdir):
    result = invoke(runner, 'check-axioms', '--star', 'min', '--tri', 'nm', '--trials', '2',
                    '--n', '256', '--output', 'report.json')
    assert result.exit_code == EXIT_LAW_FAILURE
    data = json.loads(Path('report.json').read_text())
    assert data['mode'] == 'oracle'
    usc = next(r for r in data['reports'] if r['law'] == 'closure_usc')
    assert usc['failures'] >= 1


def test_demo_necessity(runner, workdir):
    result = invoke(runner, 'demo-necessity', '--tri', 'nm', '--n', '512', '--output', 'w.json')
    assert result.exit_code == 0
    data = json.loads(Path('w.json').read_text())
    assert data['confirmed'] is True
    assert abs(data['witness']['gap'] - 0.5) <= 1 / 512


def test_demo_necessity_json_to_stdout(runner, workdir):
    result = invoke(runner, 'demo-necessity', '--tri', 'nm', '--n', '512')
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['case'] == 'case1_min_star'
    assert data['confirmed'] is True
    assert abs(data['witness']['gap'] - 0.5) <= 1 / 512


def test_demo_necessity_case_two(runner, workdir):
    result = invoke(runner, 'demo-necessity', '--tri', 'nm', '--case', 'case2_ordinal_star',
                    '--summand-lo', '1/5', '--summand-hi', '4/5', '--n', '512')
    assert result.exit_code == 0


def test_demo_necessity_right_continuous(runner, workdir):
    result = invoke(runner, 'demo-necessity', '--tri', 'product', '--n', '512')
    assert result.exit_code == EXIT_LAW_FAILURE


def test_plot_data(runner, workdir):
    result = invoke(runner, 'plot-data', '--f', 'f.json', '--g', 'g.json', '--star', 'min',
                    '--tri', 'product', '--m', '16', '--n', '32', '--output-dir', 'plots')
    assert result.exit_code == 0
    names = sorted(p.name for p in Path('plots').iterdir())
    assert names == ['cuts.csv', 'f.csv', 'g.csv', 'oracle.csv', 'staircase.csv']


def test_plot_data_without_engine(runner, workdir):
    result = invoke(runner, 'plot-data', '--f', 'f.json', '--g', 'g.json', '--star', 'min',
                    '--tri', 'nm', '--n', '32', '--output-dir', 'plots')
    assert result.exit_code == 0
    assert sorted(p.name for p in Path('plots').iterdir()) == ['f.csv', 'g.csv', 'oracle.csv']


def test_zoo(runner, workdir):
    result = invoke(runner, 'zoo', '--grid-size', '64')
    assert result.exit_code == 0


def test_zoo_rejects_tiny_grid(runner, workdir):
    result = invoke(runner, 'zoo', '--grid-size', '8')
    assert result.exit_code == EXIT_INPUT_ERROR
