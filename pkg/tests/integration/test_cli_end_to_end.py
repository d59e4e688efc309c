"""End-to-end runs of the command line on the MF-CGLE node."""

import csv
import json

import pytest

from photinus.cli import EXIT_OK, run

MFCGL = ['--model', 'mfcgl', '--params', '{"c1": -2.0, "c2": 1.1}']


def read_rows(path):
    """Rows of a CSV file as dicts."""
    with path.open() as handle:
        return list(csv.DictReader(handle))


@pytest.mark.integration
@pytest.mark.cli
@pytest.mark.mfcgl
class TestCommandLine:
    """Subcommands write plot-ready files."""

    def test_orbit(self, tmp_path, capsys):
        """Test the orbit table and the T/κ summary line."""
        out = tmp_path / 'orbit.csv'

        code = run(['orbit', *MFCGL, '--format', 'csv', '--out', str(out)])

        assert code == EXIT_OK
        assert capsys.readouterr().out.startswith('T=5.711987 kappa=-2.000000')
        assert list(read_rows(out)[0]) == ['theta', 'x1', 'x2']

    def test_reduce(self, tmp_path):
        """Test the H1..H6 table."""
        out = tmp_path / 'reduce.csv'

        assert run(['reduce', *MFCGL, '--samples', '8', '--out', str(out)]) == EXIT_OK

        rows = read_rows(out)
        assert len(rows) == 8
        assert list(rows[0]) == ['chi', 'H1', 'H2', 'H3', 'H4', 'H5', 'H6']

    def test_sweep_with_negative_start(self, tmp_path, capsys):
        """Test the eps range syntax for negative starts and the bifurcation report."""
        out = tmp_path / 'sweep.csv'

        code = run(['sweep', *MFCGL, '--eps-range=-0.2:0.6:0.05', '--out', str(out)])

        assert code == EXIT_OK
        rows = read_rows(out)
        assert float(rows[0]['eps']) == pytest.approx(-0.2)
        assert 'eps=0.48' in capsys.readouterr().err

    def test_locked_json(self, tmp_path):
        """Test locked writes its result as JSON."""
        out = tmp_path / 'locked.json'
        argv = ['locked', *MFCGL, '--state', 'splay', '--N', '3', '--eps', '0.1']

        code = run([*argv, '--format', 'json', '--out', str(out)])

        assert code == EXIT_OK
        assert json.loads(out.read_text())['states'][0]['tag'] == 'splay(3)'

    def test_simulate(self, tmp_path, capsys):
        """Test the trajectory file and the printed summary."""
        out = tmp_path / 'run.csv'
        argv = ['simulate', *MFCGL, '--N', '2', '--eps', '0.8', '--t-end', '5', '--dt-out', '1']

        code = run([*argv, '--out', str(out)])

        assert code == EXIT_OK
        assert len(read_rows(out)) == 6
        assert json.loads(capsys.readouterr().out)['mode'] == 'reduced'

    def test_boundary_recipe(self, capsys):
        """Test a shipped recipe runs through the same dispatcher."""
        assert run(['recipe', 'mfcgl_boundaries_c2_11']) == EXIT_OK

        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == 'c1,curve,eps'
        assert lines[1].startswith('-4.0,eps_s,')
