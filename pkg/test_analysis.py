"""
Tests for sampling, spectra, zeros and dynamic range.

Run with pytest, or directly:
    python test_analysis.py
"""

import json
import math
import sys

import numpy as np
import pytest

from analysis import (SampledSignal, ZeroSet, analytic_spectrum, compare_methods, default_region, dynamic_range,
                      find_zeros, fit_log_linear, local_frequencies, periodic_spectrum, sample_uniform,
                      scaling_table, sigma_bounds, verify_bandlimit)
from constructors import (build_periodic_antisymmetric, build_periodic_translates, build_sinc_translates,
                          build_varied_bandwidth, varied_bandlimits)
from errors import BoundRegimeError, SpectrumMismatchError, ValidationError
from signal_core import (FactorSpec, HarmonicSum, ProductSignalSpec, eval_product, expand_to_harmonics,
                         factor_zero_lattice, fundamental_domain)
from test_support import run_all_tests, tests_of


def three_factor_build():
    return build_periodic_translates(math.pi, 3, [0.0, 0.1, 0.2])


def sinc_cluster():
    return build_sinc_translates(math.pi, 3, [-0.1, 0.0, 0.1])


def test_sample_uniform_grid():
    spec = sinc_cluster()
    two = sample_uniform(spec, 0.0, 0.5, 2)
    assert two.n == 2
    assert list(two.times) == [0.0, 0.5]
    assert two.values[0] == pytest.approx(eval_product(spec, 0.0), rel=1e-15)

    at_shift = sample_uniform(ProductSignalSpec((FactorSpec('sinc', 2.0, 0.25),)), 0.25, 0.1, 5)
    assert at_shift.values[0] == 1.0

    with pytest.raises(ValidationError):
        sample_uniform(spec, 0.0, 0.0, 10)
    with pytest.raises(ValidationError):
        sample_uniform(spec, 0.0, 0.1, 1)


def test_sample_uniform_matches_spot_evaluation():
    spec = sinc_cluster()
    sampled = sample_uniform(spec, -20.0, 40.0 / (1 << 16), 1 << 16)
    rng = np.random.default_rng(11)
    for k in rng.integers(0, sampled.n, size=100):
        spot = eval_product(spec, sampled.t0 + k * sampled.dt)
        assert abs(sampled.values[k] - spot) <= 4 * np.spacing(abs(spot))


def test_sample_uniform_independent_of_workers():
    spec = three_factor_build()
    serial = sample_uniform(spec, -3.0, 1e-3, 6000, workers=1)
    parallel = sample_uniform(spec, -3.0, 1e-3, 6000, workers=4)
    assert np.array_equal(serial.values, parallel.values)


def test_sampled_signal_csv(tmp_path):
    sampled = sample_uniform(three_factor_build(), 0.0, 0.5, 4)
    path = tmp_path / 'samples.csv'
    sampled.to_csv(path)
    assert path.read_text().splitlines()[0] == 't,value'
    with pytest.raises(ValidationError):
        SampledSignal(0.0, 0.1, np.array([1.0]))


def test_pure_tone_spectrum():
    n = 64
    sampled = SampledSignal(0.0, 2 * math.pi / n, np.sin(2 * math.pi * np.arange(n) / n))
    report = periodic_spectrum(sampled, 2 * math.pi)
    peaks = report.frequencies[report.magnitudes > 1e-12]
    assert sorted(peaks) == pytest.approx([-1.0, 1.0])
    assert max(report.harmonic_amplitudes().values()) == pytest.approx(1.0)


def test_spectrum_rejects_wrong_period():
    sampled = SampledSignal(0.0, 0.1, np.ones(50))
    with pytest.raises(SpectrumMismatchError):
        periodic_spectrum(sampled, 6.0)


def test_periodic_build_is_bandlimited():
    spec = three_factor_build()
    period = spec.period()
    n = 256
    report = periodic_spectrum(sample_uniform(spec, 0.0, period / n, n), period, spec.omega_total)
    assert report.out_band_fraction <= 1e-10
    nonzero = report.frequencies[report.magnitudes > 1e-12 * np.max(report.magnitudes)]
    assert np.max(np.abs(nonzero)) <= math.pi + 1e-12

    # Parseval
    assert report.in_band_energy + report.out_band_energy == pytest.approx(report.total_energy, rel=1e-10)


def test_spectrum_matches_harmonic_expansion():
    spec = three_factor_build()
    harmonic = expand_to_harmonics(spec)
    period = spec.period()
    n = 256
    report = periodic_spectrum(sample_uniform(spec, 0.0, period / n, n), period, spec.omega_total)
    measured = report.harmonic_amplitudes()
    for k, amplitude in harmonic.amplitudes().items():
        w = k * harmonic.omega0
        key = min(measured, key=lambda m: abs(m - w))
        assert abs(key - w) < 1e-9
        assert measured[key] == pytest.approx(amplitude, abs=1e-10)


def test_verify_bandlimit_periodic():
    report = verify_bandlimit(three_factor_build(), tol=1e-10)
    assert report.method == 'periodic'
    assert report.passed
    assert report.out_band_fraction <= 1e-10


def test_verify_bandlimit_windowed_sinc():
    spec = sinc_cluster()
    report = verify_bandlimit(spec, tol=1e-6, window=200.0)
    assert report.method == 'windowed'
    assert report.passed
    assert report.in_band_energy + report.out_band_energy == pytest.approx(report.total_energy, rel=1e-10)
    assert report.reference_deviation is not None


def test_verify_bandlimit_reports_failure():
    sinc = ProductSignalSpec((FactorSpec('sinc', 1.0),))
    truncated = verify_bandlimit(sinc, tol=1e-10, window=10.0, taper_fraction=0.0)
    assert not truncated.passed

    # sin(t) sin(2t) = (cos t - cos 3t) / 2 splits its energy evenly across 2.0
    spec = ProductSignalSpec((FactorSpec('sine', 1.0), FactorSpec('sine', 2.0)))
    clipped = periodic_spectrum(sample_uniform(spec, 0.0, spec.period() / 64, 64), spec.period(), 2.0)
    assert clipped.out_band_fraction == pytest.approx(0.5)


def test_analytic_spectrum_is_triangle():
    w = math.pi / 2
    spec = ProductSignalSpec((FactorSpec('sinc', w), FactorSpec('sinc', w)))
    values = np.abs(analytic_spectrum(spec, [0.0, w, 2 * w, 3 * w]))
    assert values[0] == pytest.approx(math.pi / w, rel=1e-3)
    assert values[1] / values[0] == pytest.approx(0.5, abs=1e-3)
    assert values[2] < 1e-3 * values[0]
    assert values[3] == 0.0
    with pytest.raises(ValidationError):
        analytic_spectrum(three_factor_build(), [0.0])


def test_find_zeros_sine_lattice():
    spec = ProductSignalSpec((FactorSpec('sine', math.pi),))
    zeros = find_zeros(spec, -0.5, 2.5)
    assert list(zeros.zeros) == pytest.approx([0.0, 1.0, 2.0], abs=1e-9)
    assert np.all(np.diff(zeros.zeros) > zeros.tol)


def test_find_zeros_recovers_prescribed_zeros():
    zeros = find_zeros(three_factor_build(), -0.5, 0.7)
    for eps in (0.0, 0.1, 0.2):
        assert np.min(np.abs(zeros.zeros - eps)) <= 1e-9


def test_sinc_cluster_local_frequency():
    zeros = find_zeros(sinc_cluster(), 2.8, 3.2)
    assert list(zeros.zeros) == pytest.approx([2.9, 3.0, 3.1], abs=1e-9)
    assert list(np.diff(zeros.zeros)) == pytest.approx([0.1, 0.1], abs=1e-9)
    for _, omega in local_frequencies(zeros):
        assert omega == pytest.approx(10 * math.pi, abs=1e-6)


def test_varied_bandwidth_zeros_are_factor_lattices():
    spec = build_varied_bandwidth(varied_bandlimits(math.pi, 7))
    zeros = find_zeros(spec, -9.0, 9.0)
    lattice = factor_zero_lattice(spec, -9.0, 9.0)
    assert zeros.zeros.size == lattice.size
    assert np.max(np.abs(zeros.zeros - lattice)) <= 1e-9


def test_touch_is_reported_separately():
    spec = build_periodic_translates(math.pi, 2, [0.0, 0.0])
    zeros = find_zeros(spec, -1.0, 1.5)
    assert len(zeros) == 0
    assert list(zeros.touches) == pytest.approx([0.0], abs=1e-6)
    frame = zeros.to_frame()
    assert list(frame.columns) == ['t', 'kind']
    assert list(frame['kind']) == ['touch']


def test_find_zeros_validation():
    with pytest.raises(ValidationError):
        find_zeros(three_factor_build(), 1.0, 0.0)
    with pytest.raises(ValidationError):
        find_zeros(three_factor_build(), 0.0, 1.0, scan_dt=0.0)


def test_local_frequencies():
    assert local_frequencies(ZeroSet(np.array([0.0, 0.1]), 1e-12))[0][1] == pytest.approx(10 * math.pi)
    sinc = ProductSignalSpec((FactorSpec('sinc', math.pi),))
    for _, omega in local_frequencies(find_zeros(sinc, 0.5, 5.5)):
        assert omega == pytest.approx(math.pi, rel=1e-9)
    with pytest.raises(ValidationError):
        local_frequencies(ZeroSet(np.array([1.0]), 1e-12))


def test_antisymmetric_local_frequency_profile_is_symmetric():
    spec = build_periodic_antisymmetric(math.pi, 5, [0.1, 0.2])
    profile = local_frequencies(find_zeros(spec, -0.5, 0.5))
    mids = [m for m, _ in profile]
    omegas = [w for _, w in profile]
    assert mids == pytest.approx([-m for m in reversed(mids)], abs=1e-9)
    assert omegas == pytest.approx(list(reversed(omegas)), rel=1e-6)


@pytest.mark.parametrize('spec', [
    build_periodic_translates(math.pi, 3, [0.0, 0.1, 0.2]),
    build_sinc_translates(math.pi, 5, [0.0, 0.2, 0.4, 0.6, 0.8]),
    build_periodic_antisymmetric(math.pi, 3, [0.3]),
])
def test_superoscillation_certificate(spec):
    zeros = [f.designed_zero() for f in spec.factors]
    lo, hi = min(zeros) - 0.05, max(zeros) + 0.05
    fastest = max(w for _, w in local_frequencies(find_zeros(spec, lo, hi)))
    assert fastest > spec.omega_total


def test_dynamic_range_without_superoscillation():
    spec = ProductSignalSpec((FactorSpec('sine', 1.0),))
    report = dynamic_range(spec, region=(0.0, 2 * math.pi))
    assert report.sigma == 1.0
    assert report.covers_maximum


def test_dynamic_range_matches_dense_scan():
    spec = three_factor_build()
    report = dynamic_range(spec)
    assert report.region == pytest.approx((-0.05, 0.25))
    assert math.isfinite(report.sigma) and report.sigma > 1.0

    lo, hi = fundamental_domain(spec)
    dense_global = np.max(np.abs(eval_product(spec, np.linspace(lo, hi, 1_000_000))))
    dense_region = np.max(np.abs(eval_product(spec, np.linspace(*report.region, 1_000_000))))
    assert report.sigma == pytest.approx(dense_global / dense_region, rel=1e-6)
    assert report.sigma == pytest.approx(report.global_max_abs / report.superosc_max_abs)


def test_dynamic_range_is_grid_converged():
    spec = build_periodic_translates(math.pi, 5, [-0.2, -0.1, 0.0, 0.1, 0.2])
    coarse = dynamic_range(spec, samples=1 << 15)
    fine = dynamic_range(spec, samples=1 << 16)
    assert fine.sigma == pytest.approx(coarse.sigma, rel=1e-6)


def test_dynamic_range_report_json():
    report = dynamic_range(sinc_cluster())
    document = json.loads(report.to_json())
    assert {'sigma', 'global_max_abs', 'superosc_max_abs', 'region', 'lower_bound', 'upper_bound'} <= set(document)
    assert 'maxima' in document['caveat']


def test_default_region():
    assert default_region(sinc_cluster()) == pytest.approx((2.85, 3.15))
    with pytest.raises(ValidationError):
        dynamic_range(sinc_cluster(), region=(1.0, 1.0))


def test_sine_bounds_sandwich_measured_sigma():
    lower, upper = sigma_bounds('sine_translate', 5, 0.1)
    assert 0 < lower <= upper
    report = dynamic_range(build_periodic_translates(math.pi, 5, [-0.2, -0.1, 0.0, 0.1, 0.2]))
    assert lower <= report.sigma <= upper
    assert report.lower_bound == pytest.approx(lower)
    assert report.upper_bound == pytest.approx(upper)


def test_sinc_bounds_sandwich_measured_sigma():
    lower, upper = sigma_bounds('sinc-translate', 3, 0.1)
    report = dynamic_range(sinc_cluster())
    assert lower <= report.sigma <= upper


def test_lower_bound_diverges_as_spacing_shrinks():
    lowers = [sigma_bounds('sine_translate', 5, eps)[0] for eps in (0.2, 0.1, 0.05, 0.025)]
    assert all(b > 10 * a for a, b in zip(lowers, lowers[1:]))


def test_bounds_reject_bad_regimes():
    with pytest.raises(BoundRegimeError):
        sigma_bounds('sine_translate', 3, 1.0)
    with pytest.raises(ValidationError):
        sigma_bounds('sinc_varied', 3, 0.1)
    with pytest.raises(ValidationError):
        sigma_bounds('sine_translate', 1, 0.1)
    with pytest.raises(ValidationError):
        sigma_bounds('sine_translate', 3, -0.1)


def test_compare_methods_on_periodic_build():
    report = compare_methods(three_factor_build(), precision_bits=128, samples=1 << 14, additive_samples=1024)
    assert report.kernel == 'dirichlet'
    assert 0.1 <= report.ratio <= 10.0
    assert abs(report.ratio - 1.0) > 1e-6
    assert report.to_dict()['ratio'] == report.ratio


def test_scaling_table_columns():
    table = scaling_table([3, 5], [0.1, 0.2], samples=1 << 14)
    assert list(table.columns) == ['family', 'N', 'eps', 'sigma', 'lower', 'upper', 'log10_sigma']
    assert len(table) == 4
    assert (table['sigma'] >= 1.0).all()


def test_fit_log_linear_exact_line():
    x = np.array([1.0, 2.0, 3.0, 4.0])
    slope, intercept, r_squared = fit_log_linear(x, np.exp(2.0 * x + 1.0))
    assert slope == pytest.approx(2.0)
    assert intercept == pytest.approx(1.0)
    assert r_squared == pytest.approx(1.0)


def test_harmonic_sum_signal_is_accepted():
    psi = HarmonicSum(1.0, ((1, 0.0, 1.0),))
    zeros = find_zeros(psi, 1.0, 7.0)
    assert list(zeros.zeros) == pytest.approx([math.pi, 2 * math.pi], abs=1e-9)


if __name__ == "__main__":
    sys.exit(run_all_tests("ANALYSIS TEST SUITE", [
        (name, func) for name, func in tests_of(__name__) if name != 'Superoscillation certificate'
    ]))
