"""
Factor and product signal representations

A superoscillating signal is built as a product of low-bandlimit factors,
each a sine or a sinc with its own bandlimit and translation:

    S(t) = b_1(t) * b_2(t) * ... * b_N(t)

Every zero of a factor is a zero of the product, and the bandlimit of the
product is the sum of the factor bandlimits. Periodic products (all sines,
commensurate frequencies) can be expanded exactly into a finite harmonic sum.

Example:
    from signal_core import FactorSpec, ProductSignalSpec, eval_product

    spec = ProductSignalSpec([FactorSpec('sine', math.pi / 3, eps) for eps in (0, 0.1, 0.2)])
    eval_product(spec, 0.1)   # 0.0
"""

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Tuple, Union

import numpy as np

from errors import IncommensurateError, NotExpandableError, ValidationError

logger = logging.getLogger(__name__)

FACTOR_KINDS = ('sine', 'sinc')

# Below this |x| the sinc uses its Taylor series
SINC_SERIES_CUTOFF = 1e-4

# Frequency ratios are matched against fractions with denominators up to this
MAX_RATIO_DENOMINATOR = 1000
RATIO_TOL = 1e-9

# Harmonic coefficients below this fraction of the largest one are dropped
COEFF_PRUNE = 1e-15

Time = Union[float, np.ndarray]


@dataclass(frozen=True)
class FactorSpec:
    """
    One bandlimited factor.

    A sine factor evaluates to sign*sin(omega*(t - eps)); a sinc factor to
    sign*sin(x)/x with x = omega*(t - eps), equal to sign at t = eps.
    """

    kind: str
    omega: float
    eps: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.kind not in FACTOR_KINDS:
            raise ValidationError(f"Unknown factor kind {self.kind!r}; expected one of {FACTOR_KINDS}")
        if not math.isfinite(self.omega) or self.omega <= 0:
            raise ValidationError(f"Factor bandlimit must be positive and finite, got {self.omega}")
        if not math.isfinite(self.eps):
            raise ValidationError(f"Factor shift must be finite, got {self.eps}")
        if self.sign not in (1, -1):
            raise ValidationError(f"Factor sign must be +1 or -1, got {self.sign}")
        object.__setattr__(self, 'omega', float(self.omega))
        object.__setattr__(self, 'eps', float(self.eps))
        object.__setattr__(self, 'sign', int(self.sign))

    def designed_zero(self) -> float:
        """The zero this factor contributes on purpose (nearest to its shift)."""
        if self.kind == 'sine':
            return self.eps
        return self.eps + math.pi / self.omega

    def zeros_between(self, t_lo: float, t_hi: float) -> np.ndarray:
        """All zeros of the factor in [t_lo, t_hi]: eps + k*pi/omega (k != 0 for sinc)."""
        step = math.pi / self.omega
        k = np.arange(math.ceil((t_lo - self.eps) / step), math.floor((t_hi - self.eps) / step) + 1)
        if self.kind == 'sinc':
            k = k[k != 0]
        return self.eps + k * step

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'omega': self.omega, 'eps': self.eps, 'sign': self.sign}


def eval_factor(f: FactorSpec, t: Time) -> Time:
    """
    Evaluate one factor at t (scalar or array).

    Scalars and arrays go through the same vectorized path so a sampled grid
    and a spot evaluation agree bit for bit.

    Args:
        f: Factor to evaluate
        t: Time or array of times

    Returns:
        Factor value(s), float for scalar input
    """
    t_arr = np.asarray(t, dtype=float)
    x = f.omega * (t_arr - f.eps)

    if f.kind == 'sine':
        values = np.sin(x)
    else:
        small = np.abs(x) < SINC_SERIES_CUTOFF
        safe_x = np.where(small, 1.0, x)
        x2 = x * x
        values = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe_x) / safe_x)

    values = f.sign * values
    if values.ndim == 0:
        return float(values)
    return values


@dataclass(frozen=True)
class ProductSignalSpec:
    """
    Ordered product of factors with its declared bandlimit.

    The declared bandlimit defaults to the sum of the factor bandlimits and,
    when given, must agree with that sum.
    """

    factors: Tuple[FactorSpec, ...]
    omega_total: float = None

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValidationError("A product signal needs at least one factor")
        for f in factors:
            if not isinstance(f, FactorSpec):
                raise ValidationError(f"Expected FactorSpec, got {type(f).__name__}")
        object.__setattr__(self, 'factors', factors)

        total = math.fsum(f.omega for f in factors)
        if self.omega_total is None:
            object.__setattr__(self, 'omega_total', total)
        elif not math.isclose(self.omega_total, total, rel_tol=1e-12):
            raise ValidationError(
                f"Declared bandlimit {self.omega_total} does not equal the sum "
                f"of factor bandlimits {total}"
            )
        else:
            object.__setattr__(self, 'omega_total', float(self.omega_total))

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def is_periodic(self) -> bool:
        """True when every factor is a sine (period still needs commensurability)."""
        return all(f.kind == 'sine' for f in self.factors)

    @property
    def min_omega(self) -> float:
        return min(f.omega for f in self.factors)

    def period(self) -> float:
        """Common period 2*pi/omega0 of an all-sine product."""
        omega0, _ = commensurate_multipliers(self)
        return 2.0 * math.pi / omega0

    def canonical_factors(self) -> Tuple[FactorSpec, ...]:
        return tuple(sorted(self.factors, key=lambda f: (f.omega, f.eps, f.kind, f.sign)))

    def to_dict(self) -> dict:
        return {
            'factors': [f.to_dict() for f in self.canonical_factors()],
            'omega_total': self.omega_total,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def fingerprint(self) -> str:
        """SHA-256 of the canonical JSON form; independent of factor order."""
        canonical = json.dumps(self.to_dict(), separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @classmethod
    def from_json(cls, document: Union[str, dict]) -> 'ProductSignalSpec':
        """
        Parse the JSON document written by to_json().

        Raises:
            ValidationError: If the document is malformed
        """
        if isinstance(document, str):
            try:
                document = json.loads(document)
            except json.JSONDecodeError as e:
                raise ValidationError(f"Spec is not valid JSON: {e}") from e
        if not isinstance(document, dict) or not isinstance(document.get('factors'), list):
            raise ValidationError("Spec JSON must be an object with a 'factors' list")

        factors = []
        for i, item in enumerate(document['factors']):
            if not isinstance(item, dict):
                raise ValidationError(f"Factor {i} must be an object, got {type(item).__name__}")
            missing = [key for key in ('kind', 'omega', 'eps') if key not in item]
            if missing:
                raise ValidationError(f"Factor {i} is missing {', '.join(missing)}")
            try:
                omega, eps, sign = float(item['omega']), float(item['eps']), int(item.get('sign', 1))
            except (TypeError, ValueError) as e:
                raise ValidationError(f"Factor {i} has a non-numeric field: {e}") from e
            factors.append(FactorSpec(item['kind'], omega, eps, sign))

        omega_total = document.get('omega_total')
        if omega_total is not None and (isinstance(omega_total, bool) or not isinstance(omega_total, (int, float))):
            raise ValidationError(f"omega_total must be a number, got {omega_total!r}")
        return cls(tuple(factors), omega_total)


def eval_product(s: ProductSignalSpec, t: Time) -> Time:
    """Product of the factor values, multiplied left to right in declared order."""
    result = eval_factor(s.factors[0], t)
    for f in s.factors[1:]:
        result = result * eval_factor(f, t)
    return result


def product_bandlimit(s: ProductSignalSpec) -> float:
    """Sum of factor bandlimits (correctly rounded)."""
    return math.fsum(f.omega for f in s.factors)


def prescribed_zeros(s: ProductSignalSpec) -> np.ndarray:
    """Sorted designed zeros of the build, one per factor."""
    return np.sort(np.array([f.designed_zero() for f in s.factors]))


@dataclass(frozen=True)
class HarmonicSum:
    """
    Finite real trigonometric sum.

    Represents sum_k a_k cos(k w0 t) + b_k sin(k w0 t) with terms stored as
    (k, a_k, b_k), k >= 0 and increasing.
    """

    omega0: float
    terms: Tuple[Tuple[int, float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not math.isfinite(self.omega0) or self.omega0 <= 0:
            raise ValidationError(f"Fundamental frequency must be positive, got {self.omega0}")
        merged: Dict[int, List[float]] = {}
        for k, a, b in self.terms:
            if int(k) != k or k < 0:
                raise ValidationError(f"Harmonic index must be a non-negative integer, got {k}")
            slot = merged.setdefault(int(k), [0.0, 0.0])
            slot[0] += float(a)
            slot[1] += float(b)
        terms = tuple((k, a, 0.0 if k == 0 else b) for k, (a, b) in sorted(merged.items()))
        object.__setattr__(self, 'terms', terms)

    @classmethod
    def constant(cls, value: float, omega0: float = 1.0) -> 'HarmonicSum':
        return cls(omega0, ((0, float(value), 0.0),))

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega0

    @property
    def max_index(self) -> int:
        return max((k for k, _, _ in self.terms), default=0)

    def evaluate(self, t: Time) -> Time:
        t_arr = np.asarray(t, dtype=float)
        values = np.zeros_like(t_arr)
        for k, a, b in self.terms:
            phase = k * self.omega0 * t_arr
            values = values + a * np.cos(phase) + b * np.sin(phase)
        if values.ndim == 0:
            return float(values)
        return values

    def derivative(self, order: int = 1) -> 'HarmonicSum':
        """Termwise derivative; each order maps (a, b) to k*w0*(b, -a)."""
        terms = self.terms
        for _ in range(order):
            terms = tuple(
                (k, k * self.omega0 * b, -k * self.omega0 * a) for k, a, b in terms
            )
        return HarmonicSum(self.omega0, terms)

    def amplitudes(self) -> Dict[int, float]:
        """Magnitude of each harmonic: |a_k| at k = 0, hypot(a_k, b_k) otherwise."""
        return {k: (abs(a) if k == 0 else math.hypot(a, b)) for k, a, b in self.terms}

    def __neg__(self) -> 'HarmonicSum':
        return HarmonicSum(self.omega0, tuple((k, -a, -b) for k, a, b in self.terms))

    def __add__(self, other: Union['HarmonicSum', float]) -> 'HarmonicSum':
        if isinstance(other, (int, float)):
            return HarmonicSum(self.omega0, self.terms + ((0, float(other), 0.0),))
        if not math.isclose(self.omega0, other.omega0, rel_tol=1e-12):
            raise ValidationError("Cannot add harmonic sums with different fundamentals")
        return HarmonicSum(self.omega0, self.terms + other.terms)

    __radd__ = __add__


def commensurate_multipliers(s: ProductSignalSpec) -> Tuple[float, List[int]]:
    """
    Find the common fundamental of an all-sine product.

    Args:
        s: Product spec with sine factors only

    Returns:
        (omega0, multipliers) with factor bandlimit i equal to multipliers[i]*omega0

    Raises:
        NotExpandableError: If any factor is a sinc
        IncommensurateError: If the bandlimit ratios are not rational
    """
    if not s.is_periodic:
        kinds = sorted({f.kind for f in s.factors})
        raise NotExpandableError(
            f"Only all-sine products are periodic; this spec has {', '.join(kinds)} factors"
        )

    reference = s.min_omega
    fractions = []
    for f in s.factors:
        ratio = f.omega / reference
        frac = Fraction(ratio).limit_denominator(MAX_RATIO_DENOMINATOR)
        if abs(float(frac) - ratio) > RATIO_TOL * ratio:
            raise IncommensurateError(
                f"Factor bandlimit {f.omega} is not a rational multiple of {reference} "
                f"(closest ratio {frac}, off by {abs(float(frac) - ratio):.3e})"
            )
        fractions.append(frac)

    common_den = reduce(lambda x, y: x * y // math.gcd(x, y), (fr.denominator for fr in fractions), 1)
    integers = [int(fr * common_den) for fr in fractions]
    common = reduce(math.gcd, integers)
    multipliers = [m // common for m in integers]
    omega0 = reference * common / common_den
    return omega0, multipliers


def _multiply_terms(left: Dict[int, List[float]], right: Dict[int, List[float]]) -> Dict[int, List[float]]:
    product: Dict[int, List[float]] = {}

    def accumulate(k, a, b):
        if k < 0:
            k, b = -k, -b
        slot = product.setdefault(k, [0.0, 0.0])
        slot[0] += a
        slot[1] += b

    for k1, (a1, b1) in left.items():
        for k2, (a2, b2) in right.items():
            accumulate(k1 + k2, 0.5 * (a1 * a2 - b1 * b2), 0.5 * (a1 * b2 + b1 * a2))
            accumulate(k1 - k2, 0.5 * (a1 * a2 + b1 * b2), 0.5 * (b1 * a2 - a1 * b2))

    if 0 in product:
        product[0][1] = 0.0
    return product


def expand_to_harmonics(s: ProductSignalSpec) -> HarmonicSum:
    """
    Expand a periodic sine product into a finite harmonic sum.

    Factor i is rewritten as sign*sin(m_i u - phi_i) with u = omega0*t and
    phi_i = omega_i*eps_i, then factors are multiplied with the product-to-sum
    identities. Harmonic indices stay exact integers.

    Args:
        s: All-sine product with commensurate bandlimits

    Returns:
        HarmonicSum with the same fundamental omega0

    Raises:
        NotExpandableError: If the product contains sinc factors
        IncommensurateError: If the bandlimits share no fundamental
    """
    omega0, multipliers = commensurate_multipliers(s)

    terms: Dict[int, List[float]] = {0: [1.0, 0.0]}
    for f, m in zip(s.factors, multipliers):
        phi = f.omega * f.eps
        factor_terms = {m: [-f.sign * math.sin(phi), f.sign * math.cos(phi)]}
        terms = _multiply_terms(terms, factor_terms)

    largest = max(max(abs(a), abs(b)) for a, b in terms.values())
    kept = tuple(
        (k, a, b) for k, (a, b) in sorted(terms.items())
        if max(abs(a), abs(b)) > COEFF_PRUNE * largest
    )
    logger.debug("Expanded %d factors into %d harmonics of omega0=%.17g", s.n, len(kept), omega0)
    return HarmonicSum(omega0, kept)


def reference_linear_form(omega: float, a: float, t: Time) -> Time:
    """
    The commonly quoted three-factor linear form

        S_3(t) = 1/4 * (sin(omega/3*(t + 2a)) + 2 sin(omega/3*t) - sin(omega*t))

    kept for comparison with the derived expansion.
    """
    t_arr = np.asarray(t, dtype=float)
    w = omega / 3.0
    values = 0.25 * (np.sin(w * (t_arr + 2.0 * a)) + 2.0 * np.sin(w * t_arr) - np.sin(omega * t_arr))
    if values.ndim == 0:
        return float(values)
    return values


def derived_linear_form(omega: float, a: float, t: Time) -> Time:
    """
    Exact linear form of sin(w t) sin(w(t - a)) sin(w(t - 2a)), w = omega/3:

        S_3(t) = 1/4 * (sin(w(t + a)) + sin(w(t - a)) + sin(w(t - 3a)) - sin(omega*(t - a)))
    """
    t_arr = np.asarray(t, dtype=float)
    w = omega / 3.0
    values = 0.25 * (np.sin(w * (t_arr + a)) + np.sin(w * (t_arr - a)) + np.sin(w * (t_arr - 3.0 * a))
                     - np.sin(omega * (t_arr - a)))
    if values.ndim == 0:
        return float(values)
    return values


def linear_form_discrepancy(omega: float, a: float, samples: int = 10000) -> float:
    """
    Max deviation of the quoted linear form from derived_linear_form.

    The two agree at a = 0 and part at first order in a; for omega = pi,
    a = 0.1 the gap is about 0.15. A deviation above roundoff is logged as a
    warning, not raised.

    Returns:
        Maximum absolute deviation over one period
    """
    t = np.linspace(0.0, 6.0 * math.pi / omega, samples, endpoint=False)
    deviation = float(np.max(np.abs(reference_linear_form(omega, a, t) - derived_linear_form(omega, a, t))))
    if deviation > 1e-12:
        logger.warning(
            "Quoted linear form differs from the derived expansion by %.3e "
            "(omega=%g, a=%g); the derived expansion is used", deviation, omega, a
        )
    return deviation


def factor_zero_lattice(s: ProductSignalSpec, t_lo: float, t_hi: float, merge_tol: float = 1e-9) -> np.ndarray:
    """Union of all factor zeros in [t_lo, t_hi], coincident zeros merged."""
    zeros = np.sort(np.concatenate([f.zeros_between(t_lo, t_hi) for f in s.factors]))
    if zeros.size == 0:
        return zeros
    keep = np.concatenate([[True], np.diff(zeros) > merge_tol])
    return zeros[keep]


def harmonic_sum_of(psi: Union[ProductSignalSpec, HarmonicSum]) -> HarmonicSum:
    """Return psi as a HarmonicSum, expanding periodic products."""
    if isinstance(psi, HarmonicSum):
        return psi
    return expand_to_harmonics(psi)


def eval_signal(psi: Union[ProductSignalSpec, HarmonicSum], t: Time) -> Time:
    if isinstance(psi, HarmonicSum):
        return psi.evaluate(t)
    return eval_product(psi, t)


def shift_center(s: ProductSignalSpec) -> float:
    """Midpoint of the smallest and largest factor shift."""
    shifts = [f.eps for f in s.factors]
    return 0.5 * (min(shifts) + max(shifts))


def fundamental_domain(s: ProductSignalSpec, lobes: float = 4.0) -> Tuple[float, float]:
    """
    Interval over which global maxima are taken.

    One period centred on the shifts for periodic products; otherwise
    lobes half-wavelengths of the slowest factor either side of the centre.
    """
    center = shift_center(s)
    if s.is_periodic:
        try:
            half = 0.5 * s.period()
            return center - half, center + half
        except IncommensurateError:
            logger.warning("Sine factors are incommensurate; using a finite window instead of a period")
    half = lobes * math.pi / s.min_omega
    return center - half, center + half
