"""
End-to-end tests for the command line front end.

Run with pytest, or directly:
    python test_cli.py
"""

import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout

import pandas as pd
import pytest

from cli import EXIT_INVALID, EXIT_NUMERICAL, EXIT_OK, RunConfig, main, parse_angular, parse_interval, parse_list
from errors import ValidationError
from test_support import run_all_tests, tests_of

THREE_FACTOR = ['synth', '--family', 'sine-translate', '--omega', 'pi', '--n', '3', '--eps', '0,0.1,0.2']


def invoke(argv):
    """Run the CLI in-process; returns (exit status, parsed stdout JSON or None, stderr text)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main([str(a) for a in argv])
    text = out.getvalue().strip()
    return code, (json.loads(text) if text else None), err.getvalue()


def synth_three_factor(directory):
    path = directory / 'spec.json'
    code, summary, _ = invoke(THREE_FACTOR + ['--out', path])
    assert code == EXIT_OK
    return path, summary


def test_parse_angular():
    assert parse_angular('pi') == pytest.approx(3.141592653589793)
    assert parse_angular('pi/3') == pytest.approx(1.0471975511965976)
    assert parse_angular('-0.1') == -0.1
    assert parse_angular(' 2*pi ') == pytest.approx(6.283185307179586)
    for bad in ('tau', '1/0', '__import__("os")', ''):
        with pytest.raises(ValidationError):
            parse_angular(bad)


def test_parse_list_and_interval():
    assert parse_list('') == []
    assert parse_list('0,0.1,0.2') == [0.0, 0.1, 0.2]
    assert parse_interval('-0.5,0.7') == (-0.5, 0.7)
    with pytest.raises(ValidationError):
        parse_interval('1,0')
    with pytest.raises(ValidationError):
        parse_interval('0,1,2')


def test_synth_writes_spec(tmp_path):
    path, summary = synth_three_factor(tmp_path)
    document = json.loads(path.read_text())
    assert len(document['factors']) == 3
    assert summary['n_factors'] == 3
    assert summary['family'] == 'sine_translate'
    assert summary['omega_total'] == pytest.approx(3.141592653589793)
    assert len(summary['fingerprint']) > 0


def test_synth_from_local_frequency(tmp_path):
    code, summary, _ = invoke(['synth', '--family', 'sinc-translate', '--omega', 'pi', '--n', '3',
                               '--local-omega', '10*pi', '--out', tmp_path / 'spec.json'])
    assert code == EXIT_OK
    assert summary['n_factors'] == 3


def test_pipeline_runs_through_every_subcommand(tmp_path):
    spec, _ = synth_three_factor(tmp_path)

    code, summary, _ = invoke(['spectrum', '--spec', spec, '--out', tmp_path / 'spectrum.csv'])
    assert code == EXIT_OK
    assert summary['passed'] is True
    assert pd.read_csv(tmp_path / 'spectrum.csv').shape[0] > 0

    code, summary, _ = invoke(['zeros', '--spec', spec, '--range=-0.5,0.7', '--out', tmp_path / 'zeros.csv'])
    assert code == EXIT_OK
    assert summary['count'] == 3
    assert summary['zeros'] == pytest.approx([0.0, 0.1, 0.2], abs=1e-10)
    assert summary['max_local_omega'] > summary['declared_omega']
    assert list(pd.read_csv(tmp_path / 'zeros.csv').columns) == ['t', 'kind']

    code, summary, _ = invoke(['dynrange', '--spec', spec, '--out', tmp_path / 'dynrange.json'])
    assert code == EXIT_OK
    assert summary['sigma'] > 1.0
    assert json.loads((tmp_path / 'dynrange.json').read_text())['sigma'] == summary['sigma']

    code, summary, _ = invoke(['compare', '--spec', spec])
    assert code == EXIT_OK
    assert 0.1 <= summary['ratio'] <= 10.0

    potential = tmp_path / 'potential.csv'
    code, summary, _ = invoke(['potential', '--spec', spec, '--lift', 'auto-critical', '--grid', '1024',
                               '--out', potential])
    assert code == EXIT_OK
    assert summary['status'] == 'ok'
    assert (tmp_path / 'potential.json').exists()

    code, summary, _ = invoke(['eigen', '--potential', potential, '--out', tmp_path / 'ground.csv'])
    assert code == EXIT_OK
    assert summary['node_count'] == 0
    assert summary['overlap'] >= 0.999


def test_bounds_subcommand():
    code, summary, _ = invoke(['bounds', '--family', 'sine-translate', '--n', '5', '--eps', '0.1'])
    assert code == EXIT_OK
    assert 1.0 < summary['lower'] <= summary['upper']
    assert summary['N'] == 5


def test_insufficient_lift_is_a_numerical_failure(tmp_path):
    spec, _ = synth_three_factor(tmp_path)
    code, summary, stderr = invoke(['potential', '--spec', spec, '--lift', '0.5', '--grid', '1024',
                                    '--out', tmp_path / 'potential.csv'])
    assert code == EXIT_NUMERICAL
    assert summary is None
    assert 'crossing' in stderr


def test_invalid_input_exit_status(tmp_path):
    code, _, stderr = invoke(['synth', '--family', 'sine-translate', '--omega', 'pi', '--n', '3',
                              '--eps', '0,0.1', '--out', tmp_path / 'spec.json'])
    assert code == EXIT_INVALID
    assert stderr.startswith('✗')

    code, _, _ = invoke(['synth', '--family', 'gaussian', '--omega', 'pi', '--n', '1', '--eps', '0',
                         '--out', tmp_path / 'spec.json'])
    assert code == EXIT_INVALID

    code, _, _ = invoke(['dynrange', '--spec', tmp_path / 'missing.json'])
    assert code == EXIT_INVALID

    code, _, _ = invoke(['eigen', '--potential', tmp_path / 'missing.csv'])
    assert code == EXIT_INVALID


def test_malformed_spec_and_sidecar_exit_with_status_one(tmp_path):
    spec_path = tmp_path / 'spec.json'
    spec_path.write_text('{"factors": [1, 2]}')
    code, summary, stderr = invoke(['dynrange', '--spec', spec_path])
    assert code == EXIT_INVALID
    assert summary is None
    assert stderr.startswith('✗')

    potential_path = tmp_path / 'potential.csv'
    pd.DataFrame({'x': [0.0, 1.0], 'V': [0.0, 0.0]}).to_csv(potential_path, index=False)
    (tmp_path / 'potential.json').write_text('{"C": 1.5}')
    code, _, stderr = invoke(['eigen', '--potential', potential_path])
    assert code == EXIT_INVALID
    assert 'spec' in stderr

    (tmp_path / 'potential.json').write_text('[1, 2]')
    code, _, _ = invoke(['eigen', '--potential', potential_path])
    assert code == EXIT_INVALID


def test_usage_errors_exit_with_status_one():
    for argv in (['transmogrify'], ['synth', '--bogus'], []):
        with redirect_stderr(io.StringIO()):
            with pytest.raises(SystemExit) as info:
                main(argv)
        assert info.value.code == EXIT_INVALID


def test_run_config_rejects_unknown_subcommand():
    with pytest.raises(ValidationError):
        RunConfig('transmogrify')
    config = RunConfig.from_args(['bounds', '--family', 'sinc-translate', '--n', '3', '--eps', '0.1'])
    assert config.subcommand == 'bounds'
    assert config.get('omega') == 'pi'
    assert config.get('log_level', 'WARNING') == 'WARNING'


def test_repeated_runs_are_byte_identical(tmp_path):
    outputs = []
    for run in ('first', 'second'):
        directory = tmp_path / run
        directory.mkdir()
        spec, _ = synth_three_factor(directory)
        assert invoke(['zeros', '--spec', spec, '--range=-0.5,0.7', '--out', directory / 'zeros.csv'])[0] == EXIT_OK
        assert invoke(['potential', '--spec', spec, '--lift', '2', '--grid', '512',
                       '--out', directory / 'potential.csv'])[0] == EXIT_OK
        outputs.append([(directory / name).read_bytes() for name in ('spec.json', 'zeros.csv', 'potential.csv')])
    assert outputs[0] == outputs[1]


if __name__ == "__main__":
    sys.exit(run_all_tests("CLI TEST SUITE", tests_of(__name__)))
