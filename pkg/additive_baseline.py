"""
Additive (kernel interpolation) baseline

The conventional way to build a superoscillation is to prescribe points
(t_j, a_j) and find the bandlimited function of least energy through them:

    f(t) = sum_j c_j K(t - t_j),   G c = a,   G_jk = K(t_j - t_k)

with K a sinc of bandlimit Omega (real line) or a Dirichlet kernel of
order M (periodic). G becomes badly conditioned as the points crowd
together, so the solve can run at extended precision through mpmath.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy import linalg

from errors import GramMatrixError, ValidationError
from signal_core import (FactorSpec, ProductSignalSpec, Time, eval_factor, eval_product,
                         fundamental_domain, prescribed_zeros)

logger = logging.getLogger(__name__)

KERNELS = ('sinc', 'dirichlet')
NATIVE_BITS = 53

# Residuals above this fraction of max|a| downgrade the status to a warning
RESIDUAL_TOL = 1e-8

# Small-argument branch of the Dirichlet kernel
DIRICHLET_SERIES_CUTOFF = 1e-6


def _reduced_angle(t: np.ndarray, period: float) -> np.ndarray:
    r = 2.0 * math.pi * t / period
    return np.mod(r + math.pi, 2.0 * math.pi) - math.pi


def dirichlet_kernel(M: int, t: Time, period: float = 2.0 * math.pi) -> Time:
    """
    Normalized Dirichlet kernel D_M(t) = sin((M+1/2) r) / ((2M+1) sin(r/2)).

    r = 2*pi*t/period, reduced to [-pi, pi). D_M(0) = 1 and D_M has the
    given period.

    Args:
        M: Order (highest harmonic), M >= 0
        t: Time or array of times
        period: Period of the kernel

    Returns:
        Kernel value(s), float for scalar input
    """
    if M < 0 or int(M) != M:
        raise ValidationError(f"Dirichlet order must be a non-negative integer, got {M}")
    t_arr = np.asarray(t, dtype=float)
    r = _reduced_angle(t_arr, period)

    small = np.abs(r) < DIRICHLET_SERIES_CUTOFF
    safe_r = np.where(small, 1.0, r)
    closed = np.sin((M + 0.5) * safe_r) / ((2 * M + 1) * np.sin(0.5 * safe_r))
    values = np.where(small, 1.0 - M * (M + 1) * r * r / 6.0, closed)

    if values.ndim == 0:
        return float(values)
    return values


def _mp_kernel(ctx, kernel: str, scale, t):
    """Kernel value at mpf argument t, computed in ctx."""
    if kernel == 'sinc':
        x = scale * t
        if x == 0:
            return ctx.mpf(1)
        return ctx.sin(x) / x

    M, period = scale
    r = 2 * ctx.pi * t / period
    half = ctx.sin(r / 2)
    if abs(half) < ctx.eps ** 0.5:
        r = r - 2 * ctx.pi * ctx.nint(r / (2 * ctx.pi))
        if r == 0:
            return ctx.mpf(1)
        half = ctx.sin(r / 2)
    return ctx.sin((M + ctx.mpf(1) / 2) * r) / ((2 * M + 1) * half)


@dataclass(frozen=True)
class ConstraintSet:
    """Prescribed points (t_j, a_j), sorted by t with distinct t_j."""

    points: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        points = tuple(sorted((float(t), float(a)) for t, a in self.points))
        if not points:
            raise ValidationError("A constraint set needs at least one point")
        times = [t for t, _ in points]
        for left, right in zip(times, times[1:]):
            if right == left:
                raise ValidationError(f"Duplicate constraint abscissa t={left}")
        object.__setattr__(self, 'points', points)

    @classmethod
    def from_points(cls, times: Sequence[float], amplitudes: Sequence[float]) -> 'ConstraintSet':
        if len(times) != len(amplitudes):
            raise ValidationError(f"Got {len(times)} abscissae but {len(amplitudes)} amplitudes")
        return cls(tuple(zip(times, amplitudes)))

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.points])

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([a for _, a in self.points])

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class AdditiveSolution:
    """
    Minimum-energy interpolant sum_j c_j K(t - t_j).

    coeffs holds the coefficients rounded to double; exact_coeffs keeps the
    working-precision values as decimal strings so evaluation can be repeated
    at that precision.
    """

    kernel: str
    omega_or_m: float
    constraints: ConstraintSet
    coeffs: Tuple[float, ...]
    cond: float
    residual: float
    precision_bits: int
    period: float = 2.0 * math.pi
    status: str = 'ok'
    exact_coeffs: Tuple[str, ...] = field(default=(), repr=False)

    def _context(self):
        ctx = mpmath.MPContext()
        ctx.prec = self.precision_bits
        return ctx

    def _scale(self, ctx):
        if self.kernel == 'sinc':
            return ctx.mpf(self.omega_or_m)
        return (int(self.omega_or_m), ctx.mpf(self.period))

    def kernel_values(self, t: Time) -> Time:
        """K(t) in double precision."""
        if self.kernel == 'sinc':
            return eval_factor(FactorSpec('sinc', self.omega_or_m), t)
        return dirichlet_kernel(int(self.omega_or_m), t, self.period)

    def evaluate(self, t: Time) -> Time:
        """
        Evaluate the interpolant.

        Solutions computed above double precision are evaluated at their
        working precision, since the coefficients cancel heavily.
        """
        t_arr = np.asarray(t, dtype=float)
        times = self.constraints.times

        if self.precision_bits <= NATIVE_BITS:
            values = np.zeros_like(t_arr)
            for c, tj in zip(self.coeffs, times):
                values = values + c * self.kernel_values(t_arr - tj)
        else:
            ctx = self._context()
            scale = self._scale(ctx)
            coeffs = [ctx.mpf(c) for c in self.exact_coeffs]
            nodes = [ctx.mpf(tj) for tj in times]
            flat = [
                float(ctx.fsum(c * _mp_kernel(ctx, self.kernel, scale, ctx.mpf(x) - tj)
                               for c, tj in zip(coeffs, nodes)))
                for x in t_arr.ravel()
            ]
            values = np.array(flat).reshape(t_arr.shape)

        if values.ndim == 0:
            return float(values)
        return values

    def energy(self) -> float:
        """Quadratic form c^T G c."""
        times = self.constraints.times
        gram = self.kernel_values(times[:, None] - times[None, :])
        c = np.array(self.coeffs)
        return float(c @ gram @ c)

    def to_dict(self) -> dict:
        return {
            'kernel': self.kernel,
            'omega_or_M': self.omega_or_m,
            'coeffs': list(self.coeffs),
            'cond': self.cond,
            'residual': self.residual,
            'precision_bits': self.precision_bits,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _solve_native(kernel, scale, times, amps):
    if kernel == 'sinc':
        gram = eval_factor(FactorSpec('sinc', scale), times[:, None] - times[None, :])
    else:
        gram = dirichlet_kernel(scale[0], times[:, None] - times[None, :], scale[1])

    cond = float(np.linalg.cond(gram))
    try:
        factor = linalg.cho_factor(gram, lower=True)
    except linalg.LinAlgError as e:
        raise GramMatrixError(
            f"Gram matrix is not positive definite at {NATIVE_BITS} bits (condition ~{cond:.3e}); "
            f"increase the working precision", condition_number=cond
        ) from e

    coeffs = linalg.cho_solve(factor, amps)
    residual = float(np.max(np.abs(gram @ coeffs - amps)))
    return [float(c) for c in coeffs], [repr(float(c)) for c in coeffs], cond, residual


def _solve_extended(kernel, scale, times, amps, bits):
    ctx = mpmath.MPContext()
    ctx.prec = bits
    if kernel == 'sinc':
        mp_scale = ctx.mpf(scale)
    else:
        mp_scale = (scale[0], ctx.mpf(scale[1]))

    nodes = [ctx.mpf(t) for t in times]
    n = len(nodes)
    gram = ctx.matrix(n, n)
    for j in range(n):
        for k in range(n):
            gram[j, k] = _mp_kernel(ctx, kernel, mp_scale, nodes[j] - nodes[k])
    rhs = ctx.matrix([ctx.mpf(a) for a in amps])

    eigenvalues = ctx.eigsy(gram, eigvals_only=True)
    lo = min(eigenvalues[i] for i in range(n))
    hi = max(eigenvalues[i] for i in range(n))
    if lo <= 0:
        raise GramMatrixError(
            f"Gram matrix is not positive definite at {bits} bits (smallest eigenvalue {float(lo):.3e})",
            condition_number=float('inf'),
        )
    cond = float(hi / lo)

    try:
        solution = ctx.cholesky_solve(gram, rhs)
    except ValueError as e:
        raise GramMatrixError(
            f"Cholesky factorization failed at {bits} bits (condition ~{cond:.3e})", condition_number=cond
        ) from e

    residual = float(ctx.norm(gram * solution - rhs, ctx.inf))
    exact = [ctx.nstr(solution[i], int(bits * math.log10(2)) + 5) for i in range(n)]
    return [float(solution[i]) for i in range(n)], exact, cond, residual


def min_energy_interpolant(constraints: ConstraintSet, kernel: str = 'sinc',
                           omega: Optional[float] = None, m: Optional[int] = None,
                           precision_bits: int = NATIVE_BITS,
                           period: float = 2.0 * math.pi) -> AdditiveSolution:
    """
    Solve G c = a for the minimum-energy bandlimited interpolant.

    Args:
        constraints: Prescribed points
        kernel: 'sinc' (needs omega) or 'dirichlet' (needs m and period)
        omega: Bandlimit of the sinc kernel
        m: Order of the Dirichlet kernel
        precision_bits: Working precision; 53 uses numpy/scipy, more uses mpmath
        period: Period of the Dirichlet kernel

    Returns:
        AdditiveSolution with condition number and max residual

    Raises:
        ValidationError: If the kernel parameters are missing or invalid
        GramMatrixError: If G is not positive definite at this precision
    """
    if kernel not in KERNELS:
        raise ValidationError(f"Unknown kernel {kernel!r}; expected one of {KERNELS}")
    if precision_bits < NATIVE_BITS:
        raise ValidationError(f"Working precision must be at least {NATIVE_BITS} bits, got {precision_bits}")

    if kernel == 'sinc':
        if omega is None or not omega > 0:
            raise ValidationError(f"Sinc kernel needs a positive bandlimit, got {omega}")
        scale = float(omega)
        omega_or_m = float(omega)
    else:
        if m is None or m < 0 or int(m) != m:
            raise ValidationError(f"Dirichlet kernel needs a non-negative integer order, got {m}")
        if not period > 0:
            raise ValidationError(f"Dirichlet period must be positive, got {period}")
        scale = (int(m), float(period))
        omega_or_m = int(m)

    times = constraints.times
    amps = constraints.amplitudes

    if precision_bits == NATIVE_BITS:
        coeffs, exact, cond, residual = _solve_native(kernel, scale, times, amps)
    else:
        coeffs, exact, cond, residual = _solve_extended(kernel, scale, times, amps, precision_bits)

    status = 'ok'
    tolerance = RESIDUAL_TOL * max(float(np.max(np.abs(amps))), 1e-300)
    if residual > tolerance:
        status = 'warning: residual above tolerance'
        logger.warning(
            "Interpolation residual %.3e exceeds %.3e (condition %.3e, %d bits)",
            residual, tolerance, cond, precision_bits,
        )
    logger.info("Solved %d-point %s system: cond=%.3e residual=%.3e", len(constraints), kernel, cond, residual)

    return AdditiveSolution(
        kernel=kernel,
        omega_or_m=omega_or_m,
        constraints=constraints,
        coeffs=tuple(coeffs),
        cond=cond,
        residual=residual,
        precision_bits=precision_bits,
        period=float(period),
        status=status,
        exact_coeffs=tuple(exact),
    )


def _lobe(spec: ProductSignalSpec, samples: int = 8192) -> Tuple[float, float]:
    lo, hi = fundamental_domain(spec)
    t = np.linspace(lo, hi, samples, endpoint=False)
    values = eval_product(spec, t)
    i = int(np.argmax(np.abs(values)))
    return float(t[i]), float(values[i])


def matched_constraints(spec: ProductSignalSpec, lobe_samples: int = 8192) -> Tuple[ConstraintSet, dict]:
    """
    Additive constraint set matching a multiplicative build.

    Zeros become zero-amplitude points and the main lobe of the build
    contributes one point carrying its amplitude. Periodic builds pin only the
    prescribed zeros, reduced into one period; with the lobe that stays below
    the 2M+1 points that would fix a Dirichlet sum of order M. Sinc builds pin
    each prescribed zero and its mirror image eps - pi/Omega_i.

    Args:
        spec: Multiplicative build
        lobe_samples: Grid used to locate the lobe

    Returns:
        (constraints, kernel arguments for min_energy_interpolant)
    """
    if spec.is_periodic:
        period = spec.period()
        lo, _ = fundamental_domain(spec)
        zeros = [lo + (z - lo) % period for z in prescribed_zeros(spec)]
        m = int(round(spec.omega_total * period / (2.0 * math.pi)))
        if len(set(round(z, 12) for z in zeros)) + 1 > 2 * m + 1:
            raise ValidationError(f"{len(zeros)} prescribed zeros over-determine a Dirichlet kernel of order {m}")
        kernel_args = {'kernel': 'dirichlet', 'm': m, 'period': period}
    else:
        zeros = list(prescribed_zeros(spec)) + [f.eps - math.pi / f.omega for f in spec.factors]
        kernel_args = {'kernel': 'sinc', 'omega': spec.omega_total}

    unique_zeros = sorted(set(round(z, 12) for z in zeros))
    t_lobe, a_lobe = _lobe(spec, lobe_samples)
    if any(abs(t_lobe - z) < 1e-9 for z in unique_zeros):
        raise ValidationError("Lobe location coincides with a prescribed zero")

    points = [(z, 0.0) for z in unique_zeros] + [(t_lobe, a_lobe)]
    return ConstraintSet(tuple(points)), kernel_args
