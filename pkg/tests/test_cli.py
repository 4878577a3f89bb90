import json

import pytest
from click.testing import CliRunner

from hypershift.cli import common
from hypershift.cli.client import main
from hypershift.curve import CurveEstimate
from hypershift.utils.enum_class import Classification, ExitCode
from hypershift.version import __version__


@pytest.fixture
def runner():
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def csv_body(text):
    """Column row and data rows of a CSV output, without the comment header."""
    lines = [line for line in text.splitlines() if line and not line.startswith('#')]
    return lines[0].split(','), [line.split(',') for line in lines[1:]]


class TestFixedPoints:
    def test_json(self, runner):
        result = invoke(runner, 'fixed-points', '--k', '1,2,4,4')
        assert result.exit_code == ExitCode.OK
        data = json.loads(result.stdout)
        assert data['P'] == pytest.approx([0.25, 0.125, 0.125, 0.5])
        assert data['P_fixed'] is True
        assert data['M1'] == pytest.approx(2.0)
        assert [s['label'] for s in data['segments']] == ['(a,0,1-a,0)', '(0,a,0,1-a)']

    def test_degenerate(self, runner):
        result = invoke(runner, 'fixed-points', '--k', '0,1,1,1')
        assert result.exit_code == ExitCode.DEGENERATE
        data = json.loads(result.stdout)
        assert data['P'] is None
        assert '(a,0,0,1-a)' in [s['label'] for s in data['segments']]

    def test_rational_input(self, runner):
        result = invoke(runner, 'fixed-points', '--k', '-1/10,1,1,1', '--x0', '0,0,0,1')
        assert result.exit_code == ExitCode.OK
        data = json.loads(result.stdout)
        assert data['P'] is None
        assert data['x0_fixed'] is True

    def test_invalid_k(self, runner):
        assert invoke(runner, 'fixed-points', '--k', '0.1,0,1,1').exit_code == ExitCode.CONFIG_ERROR
        assert invoke(runner, 'fixed-points', '--k', '0.1,1,1').exit_code == ExitCode.CONFIG_ERROR

    def test_csv(self, runner):
        result = invoke(runner, 'fixed-points', '--k', '1,2,4,4', '--format', 'csv')
        assert '# schema=1' in result.stdout
        columns, rows = csv_body(result.stdout)
        assert columns == ['name', 'x1', 'x2', 'x3', 'x4']
        assert rows[0][0] == 'P'
        assert len(rows) == 5


class TestSpectrum:
    def test_json(self, runner):
        result = invoke(runner, 'spectrum', '--k', '1,2,3,4')
        assert result.exit_code == ExitCode.OK
        data = json.loads(result.stdout)
        assert len(data['closed_form']['eigenvalues']) == 4
        assert data['closed_form']['stability'] == 'unstable'
        assert sorted(data['vertices']) == ['q1', 'q2', 'q3', 'q4']


class TestSimulate:
    def test_two_steps(self, runner):
        result = invoke(runner, 'simulate', '--k', '1,1,1,1', '--x0', '0.5,0.5,0,0', '--iters', '2',
                        '--format', 'csv')
        assert result.exit_code == ExitCode.OK
        columns, rows = csv_body(result.stdout)
        assert columns[0] == 'iteration'
        assert [float(v) for v in rows[0][1:]] == pytest.approx([0.4, 0.6, 0.0, 0.0])
        assert float(rows[1][1]) == pytest.approx(0.322580645, abs=1e-9)

    def test_invalid_state(self, runner):
        result = invoke(runner, 'simulate', '--x0', '0.5,0.5,0.5,0')
        assert result.exit_code == ExitCode.CONFIG_ERROR


class TestNormalForm:
    def test_alpha1(self, runner):
        result = invoke(runner, 'normal-form')
        assert result.exit_code == ExitCode.OK
        data = json.loads(result.stdout)
        assert data['alpha1'] == {'re': '-16/5', 'im': '-48/5'}
        assert data['nu'] == {'re': '64/5', 'im': '0'}
        assert data['discrepancies'] == []
        assert data['verdict']['order'] == 1
        assert data['schema'] == 1
        assert 'seed' in data and data['seed'] is None

    def test_deterministic(self, runner):
        assert invoke(runner, 'normal-form').stdout == invoke(runner, 'normal-form').stdout

    def test_show_steps(self, runner):
        result = invoke(runner, 'normal-form', '--show-steps')
        assert 'a200 = -4i' in result.stderr
        assert 'alpha1 = -16/5-48/5i' in result.stderr
        assert json.loads(result.stdout)['alpha1']['re'] == '-16/5'

    def test_out_file(self, runner, tmp_path):
        target = tmp_path / 'nf' / 'normal_form.json'
        result = invoke(runner, 'normal-form', '--show-steps', '--out', str(target))
        assert result.exit_code == ExitCode.OK
        assert json.loads(target.read_text())['alpha1']['re'] == '-16/5'
        assert 'a200 = -4i' in (tmp_path / 'nf' / 'normal_form.steps.txt').read_text()


class TestCurve:
    def test_collapse_branch(self, runner):
        result = invoke(runner, 'curve', '--k', '-0.1,1,1,1', '--tol', '1e-4')
        assert result.exit_code == ExitCode.OK
        data = json.loads(result.stdout)
        assert data['classification'] == 'fixed_point'
        assert data['convergence']['converged'] is True

    def test_singular(self, runner):
        assert invoke(runner, 'curve', '--k', '0,1,1,1').exit_code == ExitCode.DEGENERATE


class TestSweep:
    def test_short_grid(self, runner):
        result = invoke(runner, 'sweep', '--grid', '0.01,0.1')
        assert result.exit_code == ExitCode.CONFIG_ERROR

    def test_narrow_grid(self, runner):
        result = invoke(runner, 'sweep', '--grid', '0.01,0.02,0.03,0.05')
        assert result.exit_code == ExitCode.CONFIG_ERROR

    def test_single_point(self, runner):
        result = invoke(runner, 'sweep', '--k1', '0.05', '--only', '--iters', '2000', '--seed', '1')
        assert result.exit_code == ExitCode.OK
        assert result.stdout.startswith('# schema=1\n')
        assert '# seed=1' in result.stdout
        columns, rows = csv_body(result.stdout)
        assert columns == ['k1', 'delta', 'radius_mean', 'radius_std', 'rotation', 'classification']
        assert len(rows) == 1
        assert float(rows[0][0]) == 0.05
        assert rows[0][-1] == 'closed_curve'

    def test_output_directory(self, runner, tmp_path):
        result = invoke(runner, 'sweep', '--k1', '0.05', '--only', '--iters', '1000', '--burn', '1000',
                        '--out', str(tmp_path / 'run'))
        assert result.exit_code == ExitCode.OK
        assert (tmp_path / 'run' / 'sweep.csv').read_text().startswith('# schema=1')
        summary = json.loads((tmp_path / 'run' / 'summary.json').read_text())
        assert len(summary['estimates']) == 1
        assert 'fit' not in summary
        assert summary['seed'] is None

    def test_gate_failure(self, runner, monkeypatch):
        def linear_radii(base, values, **kwargs):
            return [CurveEstimate(k1=v, delta=base.with_k1(v).delta, radius_mean=base.with_k1(v).delta,
                                  radius_std=0.0, rotation=0.01, classification=Classification.CLOSED_CURVE)
                    for v in values]

        monkeypatch.setattr(common, 'sweep_estimates', linear_radii)
        assert invoke(runner, 'sweep', '--format', 'json').exit_code == ExitCode.OK
        result = invoke(runner, 'sweep', '--gate', '--format', 'json', '--seed', '4')
        assert result.exit_code == ExitCode.GATE_FAILURE
        data = json.loads(result.stdout)
        assert data['fit']['slope'] == pytest.approx(1.0)
        assert data['gate']['passed'] is False
        assert data['seed'] == 4


class TestMisc:
    def test_version(self, runner):
        result = invoke(runner, '--version')
        assert result.exit_code == 0
        assert __version__ in result.stdout

    def test_verify(self, runner):
        result = invoke(runner, 'verify')
        assert result.exit_code == ExitCode.OK
        assert 'PASS  fixed_point' in result.stderr
        data = json.loads(result.stdout)
        assert data['failed'] == []
        assert len(data['checks']) == 6
        collapse = next(c for c in data['checks'] if c['name'] == 'collapse_to_Q')
        assert collapse['detail'].count('k1=') == 3
