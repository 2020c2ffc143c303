"""
Tests for the named superoscillation builds.

Run with pytest, or directly:
    python test_constructors.py
"""

import math
import sys

import numpy as np
import pytest

from constructors import (FAMILIES, SuperoscillationRequest, build_mixed, build_periodic_antisymmetric,
                          build_periodic_translates, build_sinc_translates, build_varied_bandwidth,
                          centered_epsilons, epsilons_from_frequency, normalize_family, varied_bandlimits)
from errors import ValidationError
from signal_core import FactorSpec, eval_product, prescribed_zeros
from test_support import run_all_tests, tests_of


def test_periodic_translates():
    spec = build_periodic_translates(math.pi, 3, [0.0, 0.1, 0.2])
    assert spec.n == 3
    assert all(f.kind == 'sine' and f.omega == pytest.approx(math.pi / 3) for f in spec.factors)
    assert spec.omega_total == math.pi
    for eps in (0.0, 0.1, 0.2):
        assert abs(eval_product(spec, eps)) < 1e-16


def test_coincident_shifts_give_triple_zero():
    spec = build_periodic_translates(math.pi, 3, [0.0, 0.0, 0.0])
    t = np.linspace(-0.5, 0.5, 11)
    assert np.allclose(eval_product(spec, t), np.sin(math.pi * t / 3) ** 3, atol=1e-16)


def test_translate_validation():
    with pytest.raises(ValidationError):
        build_periodic_translates(math.pi, 0, [])
    with pytest.raises(ValidationError):
        build_periodic_translates(-1.0, 2, [0.0, 0.1])
    with pytest.raises(ValidationError):
        build_sinc_translates(math.pi, 3, [0.0, 0.1])


def test_antisymmetric_build_is_odd():
    spec = build_periodic_antisymmetric(math.pi, 3, [0.1])
    assert [f.eps for f in spec.factors] == pytest.approx([-0.1, 0.0, 0.1])
    t = np.linspace(-6.0, 6.0, 20001)
    values = eval_product(spec, t)
    assert np.max(np.abs(values + eval_product(spec, -t))) <= 1e-12 * np.max(np.abs(values))


def test_antisymmetric_single_factor_is_plain_sine():
    spec = build_periodic_antisymmetric(math.pi, 1, [])
    t = np.linspace(-2, 2, 41)
    assert np.allclose(eval_product(spec, t), np.sin(math.pi * t), atol=1e-15)


def test_antisymmetric_squared_is_even():
    spec = build_periodic_antisymmetric(math.pi, 3, [0.1], squared=True)
    assert spec.n == 6
    assert spec.omega_total == math.pi
    assert all(f.omega == pytest.approx(math.pi / 6) for f in spec.factors)
    t = np.linspace(-12.0, 12.0, 20001)
    values = eval_product(spec, t)
    assert np.max(np.abs(values - eval_product(spec, -t))) <= 1e-12 * np.max(np.abs(values))


def test_antisymmetric_custom_factor_bandlimit():
    spec = build_periodic_antisymmetric(math.pi, 5, [0.1, 0.2], factor_omega=0.5)
    assert spec.omega_total == pytest.approx(2.5)


def test_antisymmetric_rejects_even_count():
    with pytest.raises(ValidationError):
        build_periodic_antisymmetric(math.pi, 4, [0.1, 0.2])
    with pytest.raises(ValidationError):
        build_periodic_antisymmetric(math.pi, 5, [0.1])


def test_sinc_translates():
    spec = build_sinc_translates(math.pi, 3, [-0.1, 0.0, 0.1])
    assert all(f.kind == 'sinc' for f in spec.factors)
    zeros = prescribed_zeros(spec)
    assert list(np.diff(zeros)) == pytest.approx([0.1, 0.1])

    identity = build_sinc_translates(math.pi, 1, [0.0])
    t = np.array([0.5, 1.5, 2.25])
    assert np.allclose(eval_product(identity, t), np.sin(math.pi * t) / (math.pi * t))


def test_sinc_translates_tail_decay():
    spec = build_sinc_translates(math.pi, 3, [-0.1, 0.0, 0.1])
    t = np.linspace(50.0, 500.0, 200001)
    scaled = np.abs(eval_product(spec, t)) * t ** 3
    assert np.max(scaled) <= (3.0 / math.pi) ** 3 * 1.01


def test_varied_bandwidth():
    bandlimits = varied_bandlimits(math.pi, 7)
    assert len(set(bandlimits)) == 7
    assert math.fsum(bandlimits) == pytest.approx(math.pi)

    spec = build_varied_bandwidth(bandlimits)
    assert spec.omega_total == pytest.approx(math.pi)
    assert all(f.kind == 'sinc' and f.eps == 0.0 for f in spec.factors)

    single = build_varied_bandwidth([2.0])
    assert eval_product(single, 0.0) == 1.0
    with pytest.raises(ValidationError):
        build_varied_bandwidth([])


def test_mixed_build_accepts_tuples():
    spec = build_mixed([('sine', 0.5, 0.1), FactorSpec('sinc', 1.0, -0.2), ('sine', 0.25, 0.0, -1)])
    assert spec.n == 3
    assert spec.omega_total == pytest.approx(1.75)
    assert spec.factors[2].sign == -1


def test_epsilons_from_frequency():
    assert list(np.diff(epsilons_from_frequency(10 * math.pi, 3))) == pytest.approx([0.1, 0.1])
    assert epsilons_from_frequency(math.pi, 2) == pytest.approx([0.0, 1.0])
    assert epsilons_from_frequency(2 * math.pi, 5) == pytest.approx([0.0, 0.5, 1.0, 1.5, 2.0])
    with pytest.raises(ValidationError):
        epsilons_from_frequency(0.0, 3)


def test_centered_epsilons():
    assert centered_epsilons(0.1, 3) == pytest.approx([-0.1, 0.0, 0.1])
    assert centered_epsilons(0.2, 4) == pytest.approx([-0.3, -0.1, 0.1, 0.3])


def test_normalize_family():
    assert normalize_family('sine-translate') == 'sine_translate'
    assert normalize_family('SINC_VARIED') == 'sinc_varied'
    assert set(FAMILIES) == {'sine_translate', 'sine_antisymmetric', 'sinc_translate', 'sinc_varied'}
    with pytest.raises(ValidationError):
        normalize_family('gaussian')


def test_request_from_local_frequency():
    spec = SuperoscillationRequest('sine-translate', math.pi, 3, local_omega=10 * math.pi).build()
    assert [f.eps for f in spec.factors] == pytest.approx([0.0, 0.1, 0.2])

    odd = SuperoscillationRequest('sine_antisymmetric', math.pi, 5, local_omega=10 * math.pi).build()
    assert sorted(f.eps for f in odd.factors) == pytest.approx([-0.2, -0.1, 0.0, 0.1, 0.2])

    varied = SuperoscillationRequest('sinc-varied', math.pi, 4).build()
    assert varied.n == 4


def test_request_validation():
    with pytest.raises(ValidationError):
        SuperoscillationRequest('sine_translate', math.pi, 3, eps=(0.0, 0.1, 0.2), local_omega=10.0)
    with pytest.raises(ValidationError):
        SuperoscillationRequest('sine_translate', math.pi, 3).build()
    with pytest.raises(ValidationError):
        SuperoscillationRequest('sine_translate', math.pi, 3, eps=(0.0, 0.1)).build()


if __name__ == "__main__":
    sys.exit(run_all_tests("CONSTRUCTORS TEST SUITE", tests_of(__name__)))
