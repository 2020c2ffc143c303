"""
Potentials whose ground state is a lifted (super)oscillating wave function

A periodic wave function psi with real zeros cannot be a ground state, but
psi + C can once the lift C removes every zero. With hbar^2/2m absorbed and
the energy set to zero, the Schrodinger equation for psi + C gives

    V(x) = psi''(x) / (psi(x) + C)

Workflow:
1. critical_lift / lift_for pick C (positive: C > -min psi, negative: C < -max psi)
2. build_potential samples V on one period and flags singular grid points
3. solve_ground_state diagonalizes H = -D2 + diag(V) on the periodic grid
   and checks that the lowest eigenvector is nodeless and matches psi + C
"""

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy import sparse
from scipy.optimize import minimize_scalar
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from analysis import CSV_FLOAT_FORMAT, find_zeros
from errors import EigenSolveError, SingularPotentialError, ValidationError
from signal_core import HarmonicSum, ProductSignalSpec, harmonic_sum_of

logger = logging.getLogger(__name__)

Psi = Union[ProductSignalSpec, HarmonicSum]

STATUS_OK = 'ok'
STATUS_CRITICAL = 'critical: touching singularities'
STATUS_CROSSING = 'crossing singularities: unphysical'

# Grid points with |psi + C| below this fraction of max|psi| + |C| are singular
SINGULAR_TOL = 1e-10

# Lifts within this fraction of max|psi| of a critical value count as critical
CRITICAL_TOL = 1e-10

MIN_GRID = 128


@dataclass(frozen=True)
class LiftedWavefunction:
    """psi + C for a periodic psi given as a harmonic sum."""

    base: HarmonicSum
    lift: float

    @classmethod
    def of(cls, psi: Psi, lift: float) -> 'LiftedWavefunction':
        return cls(harmonic_sum_of(psi), float(lift))

    @property
    def period(self) -> float:
        return self.base.period

    def values(self, x):
        return self.base.evaluate(x) + self.lift

    def second_derivative(self, x):
        return self.base.derivative(2).evaluate(x)


def _extremum(harmonic: HarmonicSum, resolution: int, sign: float) -> Tuple[float, float]:
    """Location and value of the minimum of sign*psi over one period."""
    period = harmonic.period
    x = period * np.arange(resolution) / resolution
    values = sign * harmonic.evaluate(x)
    i = int(np.argmin(values))
    step = period / resolution
    result = minimize_scalar(lambda t: sign * harmonic.evaluate(t), bounds=(x[i] - step, x[i] + step),
                             method='bounded', options={'xatol': 1e-13})
    if result.fun < values[i]:
        return float(result.x) % period, float(sign * result.fun)
    return float(x[i]), float(sign * values[i])


def critical_lift(psi: Psi, resolution: int = 1 << 16) -> Tuple[float, float]:
    """
    Critical lifts of a periodic wave function.

    Args:
        psi: Periodic product spec or harmonic sum
        resolution: Grid points per period before refinement

    Returns:
        (positive, negative) = (-min psi, -max psi)
    """
    harmonic = harmonic_sum_of(psi)
    _, low = _extremum(harmonic, resolution, 1.0)
    _, high = _extremum(harmonic, resolution, -1.0)
    return -low, -high


def lift_for(psi: Psi, sign: int = 1, margin: float = 1e-3, resolution: int = 1 << 16) -> float:
    """
    Sufficient lift: the critical value pushed out by margin*(max psi - min psi).

    Args:
        psi: Periodic wave function
        sign: +1 for a positive lift, -1 for a negative one
        margin: Relative margin
    """
    if sign not in (1, -1):
        raise ValidationError(f"Lift sign must be +1 or -1, got {sign}")
    positive, negative = critical_lift(psi, resolution)
    spread = positive - negative
    if sign == 1:
        return positive + margin * spread
    return negative - margin * spread


def second_derivative(psi: Psi, x):
    """
    Exact second derivative by termwise differentiation of the harmonic sum.

    Raises:
        NotExpandableError: If psi is a product with sinc factors
    """
    return harmonic_sum_of(psi).derivative(2).evaluate(x)


@dataclass(frozen=True)
class PotentialSpec:
    """V = psi''/(psi + C) on the uniform grid x_k = k*T/n; singular points hold NaN."""

    x: np.ndarray = field(compare=False)
    V: np.ndarray = field(compare=False)
    lift: float
    singular: np.ndarray = field(compare=False)
    period: float
    status: str
    psi_lifted: np.ndarray = field(compare=False)

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def h(self) -> float:
        return self.period / self.n

    @property
    def is_singular(self) -> bool:
        return bool(np.any(self.singular))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'x': self.x, 'V': self.V})

    def to_csv(self, path: str):
        self.to_frame().to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)

    def summary(self) -> dict:
        return {
            'C': self.lift,
            'n': self.n,
            'period': self.period,
            'status': self.status,
            'singular_count': int(np.sum(self.singular)),
        }


def build_potential(psi: Psi, C: float, n: int) -> PotentialSpec:
    """
    Reverse-engineer the potential for psi + C.

    Singular points are grid points where |psi + C| is negligible, plus the
    grid points nearest to every zero of psi + C when the lift lies between
    the two critical values (the grid may otherwise step over them).

    Args:
        psi: Periodic wave function
        C: Lift
        n: Grid points per period

    Returns:
        PotentialSpec with status ok, critical or crossing
    """
    if n < 4:
        raise ValidationError(f"Potential grid needs at least 4 points, got {n}")
    lifted = LiftedWavefunction.of(psi, C)
    harmonic = lifted.base
    period = lifted.period
    x = period * np.arange(n) / n
    h = period / n

    psi_values = harmonic.evaluate(x)
    d2 = lifted.second_derivative(x)
    total = psi_values + C

    scale = float(np.max(np.abs(psi_values))) + abs(C)
    singular = np.abs(total) < SINGULAR_TOL * scale

    t_min, low = _extremum(harmonic, max(n, 1 << 14), 1.0)
    t_max, high = _extremum(harmonic, max(n, 1 << 14), -1.0)
    positive, negative = -low, -high
    margin = CRITICAL_TOL * max(abs(low), abs(high), 1e-300)

    def nearest(t):
        return int(round(t / h)) % n

    status = STATUS_OK
    if negative + margin < C < positive - margin:
        status = STATUS_CROSSING
        zeros = find_zeros(harmonic + C, 0.0, period, scan_dt=min(h, period / 4096), tol=1e-12)
        for z in zeros.zeros:
            singular[nearest(z)] = True
        crossings = np.flatnonzero(total * np.roll(total, -1) < 0)
        for k in crossings:
            k_next = (k + 1) % n
            singular[k if abs(total[k]) <= abs(total[k_next]) else k_next] = True
        if not np.any(singular):
            singular[nearest(t_min if positive - C < C - negative else t_max)] = True
    elif abs(C - positive) <= margin or abs(C - negative) <= margin:
        status = STATUS_CRITICAL
        singular[nearest(t_min if abs(C - positive) <= margin else t_max)] = True
    elif np.any(singular):
        status = STATUS_CRITICAL

    with np.errstate(divide='ignore', invalid='ignore'):
        V = np.where(singular, np.nan, d2 / total)

    if status != STATUS_OK:
        logger.warning("Lift C=%.6g gives %d singular grid points (%s)", C, int(np.sum(singular)), status)
    return PotentialSpec(x=x, V=V, lift=float(C), singular=singular, period=period,
                         status=status, psi_lifted=total)


def hamiltonian(p: PotentialSpec) -> sparse.csr_matrix:
    """-D2 + diag(V) with the 3-point periodic Laplacian."""
    if p.is_singular:
        raise SingularPotentialError(
            f"Potential has {int(np.sum(p.singular))} singular grid points ({p.status}); "
            f"increase the lift beyond the critical value"
        )
    n, h = p.n, p.h
    off = -np.ones(n - 1) / h ** 2
    H = sparse.diags([2.0 / h ** 2 + p.V, off, off], [0, 1, -1], shape=(n, n), format='lil')
    H[0, n - 1] = -1.0 / h ** 2
    H[n - 1, 0] = -1.0 / h ** 2
    return H.tocsr()


def eigen_identity_residual(p: PotentialSpec) -> float:
    """||H (psi + C)|| / ||psi + C||; zero up to the O(h^2) discretization error."""
    H = hamiltonian(p)
    return float(np.linalg.norm(H @ p.psi_lifted) / np.linalg.norm(p.psi_lifted))


@dataclass(frozen=True)
class EigenReport:
    """Lowest eigenpair of the periodic Hamiltonian."""

    E0: float
    ground_vec: np.ndarray = field(compare=False)
    node_count: int
    overlap: float
    n: int
    lift: float
    residual: float
    x: np.ndarray = field(compare=False)
    psi_lifted: np.ndarray = field(compare=False)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'x': self.x, 'psi_lifted': self.psi_lifted, 'ground_vec': self.ground_vec})

    def to_csv(self, path: str):
        self.to_frame().to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)

    def summary(self) -> dict:
        return {'E0': self.E0, 'node_count': self.node_count, 'overlap': self.overlap, 'n': self.n, 'C': self.lift}

    def to_json(self) -> str:
        return json.dumps(self.summary())


def count_nodes(v: np.ndarray) -> int:
    """Sign changes of v around the periodic grid, the wrap pair included."""
    return int(np.sum(v * np.roll(v, -1) < 0))


def solve_ground_state(p: PotentialSpec) -> EigenReport:
    """
    Lowest eigenpair of H = -D2 + diag(V).

    Shift-invert Lanczos (eigsh) targets the eigenvalue nearest min(V) - 1,
    which lies below the spectrum since -D2 is positive semidefinite.

    Raises:
        SingularPotentialError: If the potential has singular points
        ValidationError: If the grid has fewer than 128 points
        EigenSolveError: If the eigensolver does not converge
    """
    if p.n < MIN_GRID:
        raise ValidationError(f"Ground-state solve needs at least {MIN_GRID} grid points, got {p.n}")
    H = hamiltonian(p)
    shift = float(np.min(p.V)) - 1.0

    try:
        values, vectors = eigsh(H, k=1, sigma=shift, which='LM', v0=np.ones(p.n), tol=1e-12)
    except ArpackNoConvergence as e:
        raise EigenSolveError(f"Eigensolver did not converge: {e}", residual=float('nan')) from e

    E0 = float(values[0])
    v = vectors[:, 0] / np.linalg.norm(vectors[:, 0])
    if np.sum(v) < 0:
        v = -v

    residual = float(np.linalg.norm(H @ v - E0 * v))
    tolerance = 1e-6 * max(1.0, abs(shift), abs(E0))
    if residual > tolerance:
        raise EigenSolveError(
            f"Eigenpair residual {residual:.3e} exceeds {tolerance:.3e}", residual=residual
        )

    lifted = p.psi_lifted
    overlap = float(abs(v @ lifted) / (np.linalg.norm(v) * np.linalg.norm(lifted)))
    nodes = count_nodes(v)
    logger.info("Ground state: E0=%.6e nodes=%d overlap=%.8f (n=%d)", E0, nodes, overlap, p.n)

    return EigenReport(E0=E0, ground_vec=v, node_count=nodes, overlap=overlap, n=p.n,
                       lift=p.lift, residual=residual, x=p.x, psi_lifted=lifted)


def richardson_zero_energy(E_coarse: float, E_fine: float) -> float:
    """Extrapolate an O(h^2) energy from grids h and h/2."""
    return (4.0 * E_fine - E_coarse) / 3.0


@dataclass(frozen=True)
class OscillationReport:
    extrema_in: int
    extrema_out: int
    density_in: float
    density_out: float

    @property
    def ratio(self) -> float:
        if self.density_out == 0:
            return 1.0 if self.density_in == 0 else math.inf
        return self.density_in / self.density_out

    def to_dict(self) -> dict:
        return {
            'extrema_in': self.extrema_in,
            'extrema_out': self.extrema_out,
            'density_in': self.density_in,
            'density_out': self.density_out,
            'ratio': self.ratio,
        }


def potential_oscillation_report(p: PotentialSpec, region: Tuple[float, float]) -> OscillationReport:
    """
    Strict local extrema of V per unit length inside and outside a region.

    The region is taken modulo the period.
    """
    if p.is_singular:
        raise SingularPotentialError("Oscillation report needs a non-singular potential")
    lo, hi = float(region[0]), float(region[1])
    length = hi - lo
    if not 0 < length < p.period:
        raise ValidationError(f"Region {region} must be shorter than the period {p.period}")

    V = p.V
    before, after = np.roll(V, 1), np.roll(V, -1)
    extrema = ((V > before) & (V > after)) | ((V < before) & (V < after))
    inside = np.mod(p.x - lo, p.period) < length

    count_in = int(np.sum(extrema & inside))
    count_out = int(np.sum(extrema & ~inside))
    return OscillationReport(
        extrema_in=count_in,
        extrema_out=count_out,
        density_in=count_in / length,
        density_out=count_out / (p.period - length),
    )


def potential_from_frame(frame: pd.DataFrame, psi: Psi, lift: float, status: Optional[str] = None) -> PotentialSpec:
    """
    Rebuild a PotentialSpec from an exported x,V table and its wave function.

    NaN entries of V are singular points.
    """
    missing = [c for c in ('x', 'V') if c not in frame.columns]
    if missing:
        raise ValidationError(f"Potential table is missing column(s) {', '.join(missing)}")
    harmonic = harmonic_sum_of(psi)
    x = frame['x'].to_numpy(dtype=float)
    V = frame['V'].to_numpy(dtype=float)
    singular = np.isnan(V)
    if status is None:
        status = STATUS_OK if not np.any(singular) else STATUS_CRITICAL
    return PotentialSpec(x=x, V=V, lift=float(lift), singular=singular, period=harmonic.period,
                         status=status, psi_lifted=harmonic.evaluate(x) + lift)
