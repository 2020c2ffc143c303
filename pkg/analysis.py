"""
Measurements on superoscillating signals

What the constructions claim is checked here:
- sample_uniform / periodic_spectrum / verify_bandlimit: the product really
  is bandlimited to the sum of factor bandlimits
- find_zeros / local_frequencies: zeros sit where they were placed and
  oscillate faster than the bandlimit
- dynamic_range / sigma_bounds: how much the superoscillating stretch is
  dwarfed by the lobe, with per-factor lower and upper estimates
- compare_methods / scaling_table: multiplicative vs additive construction
  and the growth of the dynamic range with N and 1/eps

Example:
    from constructors import build_sinc_translates
    from analysis import find_zeros, local_frequencies

    spec = build_sinc_translates(math.pi, 3, [-0.1, 0.0, 0.1])
    zeros = find_zeros(spec, 2.5, 3.5)
    local_frequencies(zeros)
"""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.optimize import minimize_scalar
from scipy.signal import windows

from additive_baseline import matched_constraints, min_energy_interpolant
from constructors import build_periodic_translates, build_sinc_translates, centered_epsilons, normalize_family
from errors import BoundRegimeError, IncommensurateError, SpectrumMismatchError, ValidationError
from signal_core import (FactorSpec, HarmonicSum, ProductSignalSpec, eval_factor, eval_signal,
                         fundamental_domain, prescribed_zeros, shift_center)

logger = logging.getLogger(__name__)

Signal = Union[ProductSignalSpec, HarmonicSum]

CSV_FLOAT_FORMAT = '%.17g'

# Frequencies within this relative margin of the bandlimit count as in-band
BAND_EDGE_MARGIN = 1e-9

# Guard band past the bandlimit, in taper main-lobe widths, booked as leakage
LEAKAGE_GUARD_WIDTHS = 8.0

TOUCH_THRESHOLD = 1e-12

DEFAULT_WINDOW = 200.0

SIGMA_CAVEAT = 'sigma is a ratio of maxima, not of L2 norms'

# |sinc| grows monotonically for x in (pi, 4.4934), the first extremum past the first zero
SINC_MONOTONE_PAST_ZERO = 4.493409457909064 - math.pi

BOUND_FAMILIES = ('sine_translate', 'sinc_translate')


@dataclass(frozen=True)
class SampledSignal:
    """Values on the uniform grid t0 + k*dt, k = 0..n-1."""

    t0: float
    dt: float
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        if not self.dt > 0:
            raise ValidationError(f"Sample step must be positive, got {self.dt}")
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise ValidationError("A sampled signal needs at least two values")
        object.__setattr__(self, 'values', values)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'t': self.times, 'value': self.values})

    def to_csv(self, path: str):
        self.to_frame().to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)


def sample_uniform(spec: Signal, t0: float, dt: float, n: int, workers: int = 1) -> SampledSignal:
    """
    Sample a signal on a uniform grid.

    Args:
        spec: Product spec or harmonic sum
        t0: First abscissa
        dt: Step, > 0
        n: Number of samples, >= 2
        workers: Threads to split the grid over; the values do not depend on it

    Returns:
        SampledSignal
    """
    if not dt > 0:
        raise ValidationError(f"Sample step must be positive, got {dt}")
    if n < 2:
        raise ValidationError(f"Need at least two samples, got {n}")

    times = t0 + dt * np.arange(n)
    if workers <= 1 or n < 2 * workers:
        values = eval_signal(spec, times)
    else:
        chunks = np.array_split(times, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = np.concatenate(list(pool.map(lambda chunk: eval_signal(spec, chunk), chunks)))

    return SampledSignal(t0, dt, values)


@dataclass(frozen=True)
class SpectrumReport:
    """
    Two-sided DFT spectrum with an energy split at the declared bandlimit.

    frequencies are angular frequencies in increasing order; magnitudes are
    |X_k|/n, so a real tone of amplitude A shows A/2 at each of +/-omega.
    """

    frequencies: np.ndarray = field(compare=False)
    magnitudes: np.ndarray = field(compare=False)
    in_band_energy: float
    out_band_energy: float
    omega: Optional[float]
    total_energy: float
    method: str = 'periodic'
    leakage_energy: float = 0.0
    tol: Optional[float] = None
    passed: Optional[bool] = None
    reference_deviation: Optional[float] = None

    @property
    def out_band_fraction(self) -> float:
        if self.total_energy == 0:
            return 0.0
        return self.out_band_energy / self.total_energy

    @property
    def excess_fraction(self) -> float:
        """Out-of-band energy net of the leakage guard band, over the total."""
        if self.total_energy == 0:
            return 0.0
        return max(self.out_band_energy - self.leakage_energy, 0.0) / self.total_energy

    def harmonic_amplitudes(self) -> dict:
        """One-sided amplitude per non-negative angular frequency."""
        amplitudes = {}
        for w, mag in zip(self.frequencies, self.magnitudes):
            key = abs(float(w))
            amplitudes[key] = amplitudes.get(key, 0.0) + float(mag)
        return amplitudes

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'omega': self.frequencies, 'magnitude': self.magnitudes})

    def to_csv(self, path: str):
        self.to_frame().to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)

    def summary(self) -> dict:
        return {
            'method': self.method,
            'omega': self.omega,
            'in_band_energy': self.in_band_energy,
            'out_band_energy': self.out_band_energy,
            'leakage_energy': self.leakage_energy,
            'total_energy': self.total_energy,
            'out_band_fraction': self.out_band_fraction,
            'tol': self.tol,
            'passed': self.passed,
            'reference_deviation': self.reference_deviation,
        }


def _band_split(frequencies, power, omega):
    if omega is None:
        return float(np.sum(power)), 0.0
    in_band = np.abs(frequencies) <= omega * (1.0 + BAND_EDGE_MARGIN)
    return float(np.sum(power[in_band])), float(np.sum(power[~in_band]))


def periodic_spectrum(s: SampledSignal, period: float, omega: Optional[float] = None) -> SpectrumReport:
    """
    DFT of samples covering exactly one period.

    Args:
        s: Samples on [t0, t0 + period)
        period: Period T; n*dt must equal T to 1e-12 relative
        omega: Declared bandlimit for the energy split (None puts everything in band)

    Returns:
        SpectrumReport with coefficients at omega_k = 2*pi*k/T

    Raises:
        SpectrumMismatchError: If the grid does not span one period
    """
    if abs(s.n * s.dt - period) > 1e-12 * period:
        raise SpectrumMismatchError(
            f"Grid spans {s.n * s.dt!r} but the period is {period!r}; "
            f"choose dt = period / n"
        )

    coeffs = np.fft.fft(s.values) / s.n
    frequencies = 2.0 * math.pi * np.fft.fftfreq(s.n, d=s.dt)
    power = period * np.abs(coeffs) ** 2
    in_band, out_band = _band_split(frequencies, power, omega)
    total = float(s.dt * np.sum(s.values ** 2))

    order = np.argsort(frequencies, kind='stable')
    return SpectrumReport(
        frequencies=frequencies[order],
        magnitudes=np.abs(coeffs)[order],
        in_band_energy=in_band,
        out_band_energy=out_band,
        omega=omega,
        total_energy=total,
    )


def analytic_spectrum(spec: ProductSignalSpec, omegas: Sequence[float], resolution: int = 4096) -> np.ndarray:
    """
    Fourier transform of a sinc product by iterated convolution.

    Factor i transforms to (pi/Omega_i) * rect(|w| <= Omega_i) * exp(-i w eps_i);
    the product transforms to the convolution of those, scaled by
    (1/(2 pi))^(N-1), supported on [-Omega, Omega].

    Args:
        spec: Product of sinc factors
        omegas: Angular frequencies to evaluate at
        resolution: Grid points per unit of the smallest factor bandlimit

    Returns:
        Complex spectrum at omegas
    """
    if any(f.kind != 'sinc' for f in spec.factors):
        raise ValidationError("The analytic spectrum is only available for sinc products")

    step = spec.min_omega / resolution
    spectrum = None
    start = 0.0
    for f in spec.factors:
        k = np.arange(-math.ceil(f.omega / step), math.ceil(f.omega / step) + 1)
        w = k * step
        weight = np.clip((f.omega - np.abs(w)) / step + 0.5, 0.0, 1.0)
        factor = f.sign * (math.pi / f.omega) * weight * np.exp(-1j * w * f.eps)
        if spectrum is None:
            spectrum, start = factor, w[0]
        else:
            spectrum = np.convolve(spectrum, factor) * step / (2.0 * math.pi)
            start += w[0]

    grid = start + step * np.arange(spectrum.size)
    omegas = np.asarray(omegas, dtype=float)
    values = np.interp(omegas, grid, spectrum.real) + 1j * np.interp(omegas, grid, spectrum.imag)
    values[np.abs(omegas) > spec.omega_total] = 0.0
    return values


def verify_bandlimit(spec: ProductSignalSpec, tol: float = 1e-10, window: Optional[float] = None,
                     samples: int = 16384, taper_fraction: float = 0.1) -> SpectrumReport:
    """
    Check that the spectrum of a product vanishes beyond its declared bandlimit.

    Periodic products are sampled over exactly one period. Everything else is
    sampled on [c - window, c + window] with a Tukey taper; energy in a guard
    band just past the bandlimit is booked as leakage and excluded from the
    pass criterion.

    Args:
        spec: Product to check
        tol: Allowed out-of-band fraction of the total energy
        window: Half-width of the analysis window (forces windowed mode)
        samples: DFT length
        taper_fraction: Tukey shape parameter (0 gives a plain rectangle)

    Returns:
        SpectrumReport with passed set
    """
    omega = spec.omega_total

    period = None
    if window is None and spec.is_periodic:
        try:
            period = spec.period()
        except IncommensurateError:
            logger.warning("Incommensurate sine product; falling back to a windowed spectrum")

    if period is not None:
        highest = omega * period / (2.0 * math.pi)
        n = max(samples, 1 << int(math.ceil(math.log2(4.0 * highest + 2.0))))
        sampled = sample_uniform(spec, 0.0, period / n, n)
        report = periodic_spectrum(sampled, period, omega)
        fraction = report.out_band_fraction
        passed = fraction <= tol
        result = replace(report, tol=tol, passed=passed)
    else:
        half = window if window is not None else DEFAULT_WINDOW
        center = shift_center(spec)
        dt = 2.0 * half / samples
        sampled = sample_uniform(spec, center - half, dt, samples)
        taper = windows.tukey(samples, alpha=taper_fraction, sym=False) if taper_fraction > 0 else np.ones(samples)
        tapered = SampledSignal(sampled.t0, dt, sampled.values * taper)
        report = periodic_spectrum(tapered, 2.0 * half, omega)

        # Tapered edges of width taper_fraction*window set the lobe; no taper leaves the window itself
        main_lobe = 2.0 * math.pi / ((taper_fraction if taper_fraction > 0 else 1.0) * 2.0 * half)
        guard = LEAKAGE_GUARD_WIDTHS * main_lobe
        w = report.frequencies
        power = 2.0 * half * report.magnitudes ** 2
        in_guard = (np.abs(w) > omega * (1.0 + BAND_EDGE_MARGIN)) & (np.abs(w) <= omega + guard)
        leakage = float(np.sum(power[in_guard]))

        deviation = None
        if all(f.kind == 'sinc' for f in spec.factors):
            band = np.abs(w) <= omega
            reference = np.abs(analytic_spectrum(spec, w[band]))
            measured = dt * samples * report.magnitudes[band]
            deviation = float(np.max(np.abs(measured - reference)) / max(np.max(reference), 1e-300))

        result = SpectrumReport(
            frequencies=report.frequencies,
            magnitudes=report.magnitudes,
            in_band_energy=report.in_band_energy,
            out_band_energy=report.out_band_energy,
            omega=omega,
            total_energy=report.total_energy,
            method='windowed',
            leakage_energy=leakage,
            tol=tol,
            passed=False,
            reference_deviation=deviation,
        )
        fraction = result.excess_fraction
        passed = fraction <= tol
        result = replace(result, passed=passed)
        if leakage > tol * result.total_energy:
            logger.warning("Taper leakage %.3e of total energy sits in the guard band", leakage / result.total_energy)

    logger.info("Bandlimit check (%s): out-of-band fraction %.3e, tol %.1e -> %s",
                result.method, fraction, tol, 'pass' if passed else 'FAIL')
    return result


@dataclass(frozen=True)
class ZeroSet:
    """Refined zeros (sign changes) plus touch candidates (even-multiplicity minima)."""

    zeros: np.ndarray = field(compare=False)
    tol: float
    touches: np.ndarray = field(default_factory=lambda: np.empty(0), compare=False)

    def __len__(self):
        return self.zeros.size

    def to_frame(self) -> pd.DataFrame:
        kinds = ['zero'] * self.zeros.size + ['touch'] * self.touches.size
        return pd.DataFrame({'t': np.concatenate([self.zeros, self.touches]), 'kind': kinds})


def _bisect(fn: Callable, lo: np.ndarray, hi: np.ndarray, f_lo: np.ndarray, tol: float, max_iter: int = 200):
    for _ in range(max_iter):
        if lo.size == 0 or np.max(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        left = f_lo * f_mid <= 0
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
        f_lo = np.where(left, f_lo, f_mid)
    return 0.5 * (lo + hi)


def find_zeros(spec: Signal, t_lo: float, t_hi: float, scan_dt: float = 1e-3, tol: float = 1e-12) -> ZeroSet:
    """
    Locate the real zeros of a signal on [t_lo, t_hi].

    Sign changes on the scan grid are refined by bisection until the bracket
    is no wider than tol. Local minima of |S| without a sign change are
    refined and reported as touches when |S| < 1e-12 * max|S|.

    Args:
        spec: Signal to scan
        t_lo, t_hi: Scan interval
        scan_dt: Scan step; must be below half the smallest zero spacing
        tol: Bracket width at which bisection stops

    Returns:
        ZeroSet
    """
    if not t_hi > t_lo:
        raise ValidationError(f"Empty scan interval [{t_lo}, {t_hi}]")
    if not scan_dt > 0:
        raise ValidationError(f"Scan step must be positive, got {scan_dt}")

    def fn(t):
        return eval_signal(spec, t)

    n = int(math.ceil((t_hi - t_lo) / scan_dt)) + 1
    t = np.linspace(t_lo, t_hi, n)
    v = fn(t)
    scale = float(np.max(np.abs(v)))

    exact = []
    for i in np.flatnonzero(v == 0):
        if i == 0 or i == n - 1 or v[i - 1] * v[i + 1] < 0:
            exact.append(t[i])
    brackets = np.flatnonzero(v[:-1] * v[1:] < 0)
    refined = _bisect(fn, t[brackets], t[brackets + 1], v[brackets], tol)

    zeros = np.sort(np.concatenate([refined, np.array(exact)]))
    if zeros.size:
        zeros = zeros[np.concatenate([[True], np.diff(zeros) > 2.0 * tol])]

    # Touch candidates: |v| local minima with no sign change on either side
    mags = np.abs(v)
    left, mid, right = mags[:-2], mags[1:-1], mags[2:]
    no_change = ((v[:-2] * v[1:-1] > 0) & (v[1:-1] * v[2:] > 0)) | ((v[1:-1] == 0) & (v[:-2] * v[2:] > 0))
    minimum = (mid <= left) & (mid <= right) & ((mid < left) | (mid < right))
    candidates = 1 + np.flatnonzero(no_change & minimum & (mid < 1e-3 * scale))

    touches = []
    for i in candidates:
        result = minimize_scalar(lambda x: abs(fn(x)), bounds=(t[i - 1], t[i + 1]),
                                 method='bounded', options={'xatol': max(tol, 1e-14)})
        if abs(fn(result.x)) < TOUCH_THRESHOLD * scale:
            touches.append(float(result.x))

    logger.debug("Found %d zeros and %d touches on [%g, %g]", zeros.size, len(touches), t_lo, t_hi)
    return ZeroSet(zeros, tol, np.array(sorted(touches)))


def local_frequencies(z: ZeroSet) -> List[Tuple[float, float]]:
    """(midpoint, pi/spacing) for each adjacent pair of zeros."""
    zeros = z.zeros
    if zeros.size < 2:
        raise ValidationError(f"Local frequencies need at least two zeros, got {zeros.size}")
    return [(0.5 * (a + b), math.pi / (b - a)) for a, b in zip(zeros[:-1], zeros[1:])]


@dataclass(frozen=True)
class DynamicRangeReport:
    """sigma = global_max_abs / superosc_max_abs, with optional analytic bounds."""

    sigma: float
    global_max_abs: float
    superosc_max_abs: float
    region: Tuple[float, float]
    lower_bound: Optional[float] = None
    upper_bound: Optional[float] = None
    covers_maximum: bool = False
    t_global_max: Optional[float] = None
    caveat: str = SIGMA_CAVEAT

    def to_dict(self) -> dict:
        return {
            'sigma': self.sigma,
            'global_max_abs': self.global_max_abs,
            'superosc_max_abs': self.superosc_max_abs,
            'region': list(self.region),
            'lower_bound': self.lower_bound,
            'upper_bound': self.upper_bound,
            'covers_maximum': self.covers_maximum,
            't_global_max': self.t_global_max,
            'caveat': self.caveat,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def max_abs(fn: Callable, t_lo: float, t_hi: float, samples: int) -> Tuple[float, float]:
    """
    Maximum of |fn| on [t_lo, t_hi]: dense grid, then bounded refinement of the best cell.

    Returns:
        (t_max, max |fn|)
    """
    t = np.linspace(t_lo, t_hi, samples)
    values = np.abs(np.asarray(fn(t), dtype=float))
    i = int(np.argmax(values))
    best_t, best = float(t[i]), float(values[i])

    lo, hi = t[max(i - 1, 0)], t[min(i + 1, samples - 1)]
    if hi > lo:
        result = minimize_scalar(lambda x: -abs(float(fn(x))), bounds=(lo, hi),
                                 method='bounded', options={'xatol': 1e-13})
        if -result.fun > best:
            best_t, best = float(result.x), float(-result.fun)
    return best_t, best


def default_region(spec: ProductSignalSpec) -> Tuple[float, float]:
    """
    Superoscillating stretch identified by the prescribed zeros.

    [min zero - eps/2, max zero + eps/2] with eps the smallest spacing between
    distinct prescribed zeros (a single zero gets a quarter of pi/Omega).
    """
    zeros = np.unique(prescribed_zeros(spec))
    gaps = np.diff(zeros)
    gaps = gaps[gaps > 1e-12]
    eps = float(np.min(gaps)) if gaps.size else 0.25 * math.pi / spec.omega_total
    return float(zeros[0] - 0.5 * eps), float(zeros[-1] + 0.5 * eps)


def bound_configuration(family: str, n: int, eps: float, omega: float = math.pi) -> ProductSignalSpec:
    """Uniform build with displacements centred on the origin, as used by sigma_bounds."""
    family = normalize_family(family)
    shifts = centered_epsilons(eps, n)
    if family == 'sine_translate':
        return build_periodic_translates(omega, n, shifts)
    if family == 'sinc_translate':
        return build_sinc_translates(omega, n, shifts)
    raise ValidationError(f"Bounds are defined for {', '.join(BOUND_FAMILIES)}, not {family}")


def _uniform_family(spec: ProductSignalSpec) -> Optional[Tuple[str, int, float, float]]:
    kinds = {f.kind for f in spec.factors}
    omegas = [f.omega for f in spec.factors]
    if len(kinds) != 1 or spec.n < 2 or any(f.sign != 1 for f in spec.factors):
        return None
    if max(omegas) - min(omegas) > 1e-12 * max(omegas):
        return None
    shifts = np.sort([f.eps for f in spec.factors])
    gaps = np.diff(shifts)
    if gaps[0] <= 0 or np.max(np.abs(gaps - gaps[0])) > 1e-9 * gaps[0]:
        return None
    family = 'sine_translate' if kinds == {'sine'} else 'sinc_translate'
    return family, spec.n, float(gaps[0]), spec.omega_total


def dynamic_range(spec: ProductSignalSpec, region: Optional[Tuple[float, float]] = None,
                  samples: int = 65536) -> DynamicRangeReport:
    """
    Ratio of the global maximum of |S| to its maximum inside the region.

    The global maximum is taken over one period for periodic products and
    over the centre +/- 4 half-wavelengths of the slowest factor otherwise.
    Uniformly spaced builds centred on the origin also get sigma_bounds.

    Args:
        spec: Product to measure
        region: (t_lo, t_hi); defaults to default_region(spec)
        samples: Grid size for the global scan

    Returns:
        DynamicRangeReport
    """
    region = default_region(spec) if region is None else (float(region[0]), float(region[1]))
    if not region[1] > region[0]:
        raise ValidationError(f"Superoscillating region {region} is empty")

    def fn(t):
        return eval_signal(spec, t)

    lo, hi = fundamental_domain(spec)
    t_global, global_max = max_abs(fn, lo, hi, samples)
    region_samples = max(4096, samples // 8)
    _, region_max = max_abs(fn, region[0], region[1], region_samples)

    covers = (region[0] <= t_global <= region[1]) or region_max >= global_max * (1.0 - 1e-12)
    if covers:
        sigma = 1.0
        logger.info("Region %s covers the global maximum; sigma set to 1", region)
    elif region_max == 0:
        raise ValidationError(f"Signal vanishes identically on region {region}")
    else:
        sigma = global_max / region_max

    lower = upper = None
    uniform = _uniform_family(spec)
    if uniform is not None and region == default_region(spec):
        family, n, eps, omega = uniform
        centred = [f.eps for f in spec.factors]
        if abs(min(centred) + max(centred)) <= 1e-12 * max(1.0, abs(max(centred))):
            try:
                lower, upper = sigma_bounds(family, n, eps, omega)
            except BoundRegimeError as e:
                logger.info("No analytic bounds for this build: %s", e)

    logger.debug("%s", SIGMA_CAVEAT)
    return DynamicRangeReport(
        sigma=sigma,
        global_max_abs=global_max,
        superosc_max_abs=region_max,
        region=region,
        lower_bound=lower,
        upper_bound=upper,
        covers_maximum=covers,
        t_global_max=t_global,
    )


def _factor_max_on_region(f: FactorSpec, zero: float, region: Tuple[float, float]) -> float:
    """Max of |f| over the region, which must lie on the monotone flanks of the designed zero."""
    left_reach = math.pi / (2.0 * f.omega) if f.kind == 'sine' else math.pi / f.omega
    right_reach = math.pi / (2.0 * f.omega) if f.kind == 'sine' else SINC_MONOTONE_PAST_ZERO / f.omega
    if zero - region[0] >= left_reach or region[1] - zero >= right_reach:
        raise BoundRegimeError(
            f"Region {region} leaves the monotone neighbourhood of the zero at {zero:.6g} "
            f"(factor bandlimit {f.omega:.6g}); reduce N*eps"
        )
    return max(abs(eval_factor(f, region[0])), abs(eval_factor(f, region[1])))


def sigma_bounds(family: str, n: int, eps: float, omega: float = math.pi) -> Tuple[float, float]:
    """
    Lower and upper estimates of the dynamic range of a uniform build.

    The build has N factors of bandlimit Omega/N with displacements spaced eps
    and centred on the origin. Estimates are products over factors:

    - lobe underestimate: |S(t_L)|, t_L the lobe centre (pi/(2W) for sines, 0 for sincs)
    - superoscillation overestimate: prod_n max over the region of |b_n|
    - lobe overestimate: 1
    - superoscillation underestimate: |S| halfway between the two central zeros

    lower = lobe underestimate / superoscillation overestimate,
    upper = 1 / superoscillation underestimate.

    Args:
        family: 'sine_translate' or 'sinc_translate'
        n: Number of factors, >= 2
        eps: Zero spacing, > 0
        omega: Total bandlimit

    Returns:
        (lower, upper)

    Raises:
        BoundRegimeError: If an estimate is not positive or the region leaves
            the neighbourhood where every factor is monotone
    """
    family = normalize_family(family)
    if family not in BOUND_FAMILIES:
        raise ValidationError(f"Bounds are defined for {', '.join(BOUND_FAMILIES)}, not {family}")
    if n < 2:
        raise ValidationError(f"Bounds need N >= 2, got {n}")
    if not eps > 0:
        raise ValidationError(f"Zero spacing must be positive, got {eps}")

    spec = bound_configuration(family, n, eps, omega)
    region = default_region(spec)
    zeros = prescribed_zeros(spec)
    per_factor = spec.factors[0].omega

    t_lobe = math.pi / (2.0 * per_factor) if family == 'sine_translate' else 0.0
    lobe_under = abs(eval_signal(spec, t_lobe))

    superosc_over = 1.0
    for f in spec.factors:
        superosc_over *= _factor_max_on_region(f, f.designed_zero(), region)

    central = (n - 1) // 2
    t_mid = 0.5 * (zeros[central] + zeros[central + 1]) if n % 2 == 0 else 0.5 * (zeros[central] + zeros[central - 1])
    superosc_under = abs(eval_signal(spec, t_mid))

    if lobe_under <= 0 or superosc_over <= 0 or superosc_under <= 0:
        raise BoundRegimeError(
            f"Non-positive estimate for {family} N={n} eps={eps}: lobe {lobe_under:.3e}, "
            f"superoscillation over {superosc_over:.3e}, under {superosc_under:.3e}"
        )

    lower = lobe_under / superosc_over
    upper = 1.0 / superosc_under
    if lower > upper:
        raise BoundRegimeError(f"Lower estimate {lower:.3e} exceeds upper estimate {upper:.3e}")
    return lower, upper


@dataclass(frozen=True)
class ComparisonReport:
    sigma_multiplicative: float
    sigma_additive: float
    cond: float
    precision_bits: int
    region: Tuple[float, float]
    residual: float
    kernel: str

    @property
    def ratio(self) -> float:
        return self.sigma_additive / self.sigma_multiplicative

    def to_dict(self) -> dict:
        return {
            'sigma_multiplicative': self.sigma_multiplicative,
            'sigma_additive': self.sigma_additive,
            'ratio': self.ratio,
            'cond': self.cond,
            'precision_bits': self.precision_bits,
            'region': list(self.region),
            'kernel': self.kernel,
            'residual': self.residual,
        }


def compare_methods(spec: ProductSignalSpec, region: Optional[Tuple[float, float]] = None,
                    precision_bits: int = 128, samples: int = 65536,
                    additive_samples: int = 2048) -> ComparisonReport:
    """
    Dynamic range of a multiplicative build against the additive interpolant
    through the matching constraints.

    Args:
        spec: Multiplicative build
        region: Superoscillating region; defaults to default_region(spec)
        precision_bits: Working precision of the additive solve
        samples: Grid for the multiplicative scan
        additive_samples: Grid for the (slower) additive scan

    Returns:
        ComparisonReport
    """
    region = default_region(spec) if region is None else region
    multiplicative = dynamic_range(spec, region, samples)

    constraints, kernel_args = matched_constraints(spec)
    solution = min_energy_interpolant(constraints, precision_bits=precision_bits, **kernel_args)

    lo, hi = fundamental_domain(spec)
    _, global_max = max_abs(solution.evaluate, lo, hi, additive_samples)
    _, region_max = max_abs(solution.evaluate, region[0], region[1], max(256, additive_samples // 4))
    sigma_additive = max(global_max / region_max, 1.0) if region_max > 0 else float('inf')

    logger.info("sigma multiplicative %.4e, additive %.4e (cond %.3e)",
                multiplicative.sigma, sigma_additive, solution.cond)
    return ComparisonReport(
        sigma_multiplicative=multiplicative.sigma,
        sigma_additive=sigma_additive,
        cond=solution.cond,
        precision_bits=precision_bits,
        region=region,
        residual=solution.residual,
        kernel=solution.kernel,
    )


def scaling_table(ns: Sequence[int], eps_values: Sequence[float], family: str = 'sine_translate',
                  omega: float = math.pi, samples: int = 65536) -> pd.DataFrame:
    """
    Measured dynamic range and its bounds over a grid of (N, eps).

    Returns:
        DataFrame with columns family, N, eps, sigma, lower, upper, log10_sigma
    """
    family = normalize_family(family)
    rows = []
    for n in ns:
        for eps in eps_values:
            spec = bound_configuration(family, n, eps, omega)
            report = dynamic_range(spec, samples=samples)
            rows.append({
                'family': family,
                'N': n,
                'eps': eps,
                'sigma': report.sigma,
                'lower': report.lower_bound,
                'upper': report.upper_bound,
                'log10_sigma': math.log10(report.sigma),
            })
    return pd.DataFrame(rows, columns=['family', 'N', 'eps', 'sigma', 'lower', 'upper', 'log10_sigma'])


def fit_log_linear(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float, float]:
    """
    Least-squares line through (x, log y).

    Returns:
        (slope, intercept, r_squared)
    """
    x = np.asarray(x, dtype=float)
    log_y = np.log(np.asarray(y, dtype=float))
    slope, intercept = np.polyfit(x, log_y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((log_y - fitted) ** 2))
    ss_tot = float(np.sum((log_y - np.mean(log_y)) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r_squared
