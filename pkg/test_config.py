"""
Tests for environment-driven settings and the error hierarchy.

Run with pytest, or directly:
    python test_config.py
"""

import sys

import pytest

import errors
from config import ENV_PREFIX, Settings
from test_support import run_all_tests, tests_of


def test_defaults_without_environment():
    settings = Settings.from_env({})
    assert settings == Settings()
    assert settings.precision_bits == 128
    assert settings.grid == 2048


def test_values_are_parsed_by_field_type():
    settings = Settings.from_env({
        ENV_PREFIX + 'GRID': '4096',
        ENV_PREFIX + 'ZERO_TOL': '1e-10',
        ENV_PREFIX + 'LOG_LEVEL': 'debug',
        ENV_PREFIX + 'OUTPUT_DIR': 'figures',
        ENV_PREFIX + 'WORKERS': '',
    })
    assert settings.grid == 4096
    assert settings.zero_tol == 1e-10
    assert settings.output_dir == 'figures'
    assert settings.workers == 1


def test_every_unparseable_variable_is_reported():
    with pytest.raises(errors.ConfigError) as info:
        Settings.from_env({ENV_PREFIX + 'GRID': 'large', ENV_PREFIX + 'SCAN_DT': 'fine'})
    message = str(info.value)
    assert 'SUPEROSC_GRID' in message
    assert 'SUPEROSC_SCAN_DT' in message


def test_out_of_range_values_are_rejected():
    for name, value in (('GRID', '64'), ('PRECISION_BITS', '32'), ('TAPER_FRACTION', '1.5'),
                        ('LOG_LEVEL', 'LOUD'), ('WINDOW', '0')):
        with pytest.raises(errors.ConfigError):
            Settings.from_env({ENV_PREFIX + name: value})


def test_error_hierarchy():
    assert issubclass(errors.ConfigError, ValueError)
    for cls in (errors.IncommensurateError, errors.NotExpandableError, errors.SpectrumMismatchError,
                errors.BoundRegimeError):
        assert issubclass(cls, errors.ValidationError)
    for cls in (errors.GramMatrixError, errors.SingularPotentialError, errors.EigenSolveError):
        assert issubclass(cls, errors.NumericalError)
        assert issubclass(cls, ArithmeticError)
    assert errors.GramMatrixError("not SPD", 1e18).condition_number == 1e18
    assert errors.EigenSolveError("no convergence", 1e-3).residual == 1e-3


if __name__ == "__main__":
    sys.exit(run_all_tests("CONFIG TEST SUITE", tests_of(__name__)))
