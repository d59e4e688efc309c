"""Unit tests for the command-line front end."""

import json
from unittest.mock import patch

import pytest

from photinus.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, parse_range, run, write_output
from photinus.errors import ConfigurationError, ConvergenceError
from photinus.models.photinus_models import CompareResult, HopResult


@pytest.mark.unit
@pytest.mark.cli
class TestParseRange:
    """Test cases for parse_range."""

    def test_valid(self):
        """Test a:b:step is split into floats."""
        assert parse_range('-0.5:1:0.25') == (-0.5, 1.0, 0.25)

    @pytest.mark.parametrize('text', ['0:1', '0:1:x', ''])
    def test_invalid(self, text):
        """Test malformed ranges are configuration errors."""
        with pytest.raises(ConfigurationError, match='eps range'):
            parse_range(text)


@pytest.mark.unit
@pytest.mark.cli
class TestWriteOutput:
    """Test cases for write_output."""

    def test_csv_to_file(self, tmp_path):
        """Test rows with differing keys share one header."""
        out = tmp_path / 'rows.csv'

        write_output([{'eps': 0.1, 'state': 'synchrony'}, {'eps': 0.2, 'chi': 3.0}], out, 'csv')

        assert out.read_text().splitlines() == [
            'eps,state,chi',
            '0.1,synchrony,',
            '0.2,,3.0',
        ]

    def test_json_rows_to_stdout(self, capsys):
        """Test rows are dumped as a JSON list."""
        write_output([{'eps': 0.1}], None, 'json')

        assert json.loads(capsys.readouterr().out) == [{'eps': 0.1}]

    def test_model_is_always_json(self, capsys):
        """Test a model is written as JSON even when CSV is requested."""
        write_output(HopResult(state='synchrony', order=2, n_nodes=2, boundaries=[]), None, 'csv')

        assert json.loads(capsys.readouterr().out)['state'] == 'synchrony'


@pytest.mark.unit
@pytest.mark.cli
class TestRun:
    """Test cases for subcommand dispatch and exit codes."""

    def test_oracle_single_point(self, capsys):
        """Test the oracle at one c1 prints its boundaries as JSON."""
        code = run(['oracle', '--c2', '1.1', '--c1', '-2'])

        assert code == EXIT_OK
        result = json.loads(capsys.readouterr().out)
        assert result['boundaries']['eps_s'] == pytest.approx(0.48)

    def test_oracle_table(self, tmp_path):
        """Test the oracle table is written as plot-ready CSV."""
        out = tmp_path / 'oracle.csv'

        code = run(['oracle', '--c2', '1.1', '--points', '3', '--out', str(out)])

        assert code == EXIT_OK
        assert out.read_text().splitlines()[0] == 'c1,curve,eps'

    def test_bad_eps_range(self, capsys):
        """Test a malformed eps range exits with the configuration code."""
        code = run(['sweep', '--eps-range', '0:1'])

        assert code == EXIT_CONFIG
        assert 'eps range' in capsys.readouterr().err

    @pytest.mark.parametrize(
        'argv',
        [
            ['frobnicate'],
            [],
            ['locked', '--eps', '0.1', '--state', 'chimera'],
            ['locked', '--eps', '0.1', '--topology', 'matrix'],
            ['recipe', 'no_such_recipe'],
        ],
    )
    def test_configuration_errors(self, argv):
        """Test unknown commands, bad options and missing inputs exit with code 2."""
        assert run(argv) == EXIT_CONFIG

    def test_recipe_list(self, capsys):
        """Test recipe list prints one line per recipe."""
        code = run(['recipe', 'list'])

        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert any(line.startswith('ml200_reduced: ') for line in lines)

    def test_hop_csv(self, capsys):
        """Test hop rows and the N alias."""
        with patch('photinus.cli.HigherOrderService') as mock_service:
            mock_service.return_value.hop.return_value = HopResult(
                state='synchrony', order=2, n_nodes=4, boundaries=[-2.0]
            )

            code = run(['hop', '--N', '4', '--order', '2'])

        assert code == EXIT_OK
        request = mock_service.return_value.hop.call_args.args[0]
        assert request.n_nodes == 4
        assert capsys.readouterr().out.splitlines() == [
            'state,order,n_nodes,eps',
            'synchrony,2,4,-2.0',
        ]

    def test_compare_failure(self, capsys):
        """Test a deviation above tolerance exits with the numerical code."""
        with patch('photinus.cli.OracleService') as mock_service:
            mock_service.return_value.compare.return_value = CompareResult(
                curve='eps_s', rows=[], max_deviation=0.1, tol=1e-5
            )

            code = run(['compare', '--c2', '1.1'])

        assert code == EXIT_NUMERICAL
        captured = capsys.readouterr()
        assert 'eps_s: max deviation 1.000e-01' in captured.out
        assert 'numerical failure' in captured.err

    def test_compare_other_model(self):
        """Test closed forms are only available for the MF-CGLE model."""
        assert run(['compare', '--c2', '1.1', '--model', 'morris_lecar']) == EXIT_CONFIG

    def test_numerical_failure(self):
        """Test pipeline failures exit with code 3."""
        with patch('photinus.cli.ReductionService') as mock_service:
            mock_service.return_value.get_orbit.side_effect = ConvergenceError('no orbit')
            with patch('photinus.cli._reduction', None):
                code = run(['orbit'])

        assert code == EXIT_NUMERICAL
