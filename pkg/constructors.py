"""
Named superoscillation constructions

Each builder returns a ProductSignalSpec:
- build_periodic_translates: sines of bandlimit Omega/N translated by eps_n
- build_periodic_antisymmetric: sin(W t) times pairs sin(W(t +/- eps_n)), optionally squared
- build_sinc_translates: sincs of bandlimit Omega/N translated by eps_n
- build_varied_bandwidth: sincs of different bandlimits, all centred on the origin
- build_mixed: any combination of translated and stretched factors

SuperoscillationRequest bundles the parameters of one build so the command
line front end and the figure script can share the same dispatch.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from errors import ValidationError
from signal_core import FactorSpec, ProductSignalSpec

logger = logging.getLogger(__name__)

FAMILIES = ('sine_translate', 'sine_antisymmetric', 'sinc_translate', 'sinc_varied')


def normalize_family(name: str) -> str:
    """Accept 'sine-translate' as well as 'sine_translate'."""
    family = name.strip().lower().replace('-', '_')
    if family not in FAMILIES:
        raise ValidationError(
            f"Unknown family {name!r}; expected one of {', '.join(f.replace('_', '-') for f in FAMILIES)}"
        )
    return family


def epsilons_from_frequency(omega: float, m: int, start: float = 0.0) -> List[float]:
    """
    Displacements that realize a target local frequency.

    Zeros spaced eps = pi/omega apart oscillate locally at omega.

    Args:
        omega: Target local angular frequency
        m: Number of displacements
        start: First displacement

    Returns:
        [start, start + eps, ..., start + (m-1)*eps]
    """
    if not omega > 0:
        raise ValidationError(f"Local frequency must be positive, got {omega}")
    if m < 0:
        raise ValidationError(f"Displacement count must be non-negative, got {m}")
    spacing = math.pi / omega
    return [start + k * spacing for k in range(m)]


def centered_epsilons(eps: float, n: int) -> List[float]:
    """n displacements spaced eps, symmetric about the origin."""
    return [(k - (n - 1) / 2.0) * eps for k in range(n)]


def _check_translate_args(omega: float, n: int, eps_list: Sequence[float]):
    if n < 1:
        raise ValidationError(f"Factor count N must be at least 1, got {n}")
    if not omega > 0:
        raise ValidationError(f"Total bandlimit must be positive, got {omega}")
    if len(eps_list) != n:
        raise ValidationError(f"Expected {n} displacements, got {len(eps_list)}")


def build_periodic_translates(omega: float, n: int, eps_list: Sequence[float]) -> ProductSignalSpec:
    """
    Product of N translated copies of sin(Omega/N t).

    Args:
        omega: Total bandlimit Omega
        n: Number of factors
        eps_list: One displacement per factor; the signal vanishes at each

    Returns:
        ProductSignalSpec with declared bandlimit Omega
    """
    _check_translate_args(omega, n, eps_list)
    per_factor = omega / n
    return ProductSignalSpec(tuple(FactorSpec('sine', per_factor, float(e)) for e in eps_list), omega)


def build_periodic_antisymmetric(omega: float, n: int, eps_list: Sequence[float],
                                 factor_omega: Optional[float] = None,
                                 squared: bool = False) -> ProductSignalSpec:
    """
    Odd product sin(W t) * prod_n sin(W(t - eps_n)) sin(W(t + eps_n)).

    The per-factor bandlimit W defaults to Omega/N, or Omega/(2N) for the
    squared build, which repeats every factor and gives an even function with
    bandlimit Omega.

    Args:
        omega: Total bandlimit Omega
        n: Odd number of distinct factors
        eps_list: (N-1)/2 positive displacements
        factor_omega: Override for W; the declared bandlimit is then the factor sum
        squared: Square the product

    Returns:
        ProductSignalSpec, factors ordered by shift
    """
    if n < 1 or n % 2 == 0:
        raise ValidationError(f"Antisymmetric build needs an odd factor count, got N={n}")
    if not omega > 0:
        raise ValidationError(f"Total bandlimit must be positive, got {omega}")
    if len(eps_list) != (n - 1) // 2:
        raise ValidationError(f"Antisymmetric build with N={n} needs {(n - 1) // 2} displacements, got {len(eps_list)}")

    if factor_omega is None:
        per_factor = omega / (2 * n) if squared else omega / n
        declared = omega
    else:
        if not factor_omega > 0:
            raise ValidationError(f"Per-factor bandlimit must be positive, got {factor_omega}")
        per_factor = factor_omega
        declared = None

    shifts = sorted([0.0] + [float(e) for e in eps_list] + [-float(e) for e in eps_list])
    factors = [FactorSpec('sine', per_factor, s) for s in shifts]
    if squared:
        factors = [f for f in factors for _ in range(2)]

    return ProductSignalSpec(tuple(factors), declared)


def build_sinc_translates(omega: float, n: int, eps_list: Sequence[float]) -> ProductSignalSpec:
    """Product of N sincs of bandlimit Omega/N translated by eps_n; decays as |t|^-N."""
    _check_translate_args(omega, n, eps_list)
    per_factor = omega / n
    return ProductSignalSpec(tuple(FactorSpec('sinc', per_factor, float(e)) for e in eps_list), omega)


def build_varied_bandwidth(omega_list: Sequence[float]) -> ProductSignalSpec:
    """Product of origin-centred sincs with the given bandlimits."""
    if len(omega_list) == 0:
        raise ValidationError("Varied-bandwidth build needs at least one bandlimit")
    return ProductSignalSpec(tuple(FactorSpec('sinc', float(w), 0.0) for w in omega_list))


def varied_bandlimits(omega: float, n: int) -> List[float]:
    """Distinct bandlimits Omega*k/(1+2+...+N), k = 1..N, summing to Omega."""
    if n < 1:
        raise ValidationError(f"Factor count N must be at least 1, got {n}")
    if not omega > 0:
        raise ValidationError(f"Total bandlimit must be positive, got {omega}")
    weight = n * (n + 1) / 2.0
    return [omega * k / weight for k in range(1, n + 1)]


FactorLike = Union[FactorSpec, Tuple]


def build_mixed(factors: Sequence[FactorLike], omega_total: Optional[float] = None) -> ProductSignalSpec:
    """
    Product of arbitrary sine/sinc factors.

    Args:
        factors: FactorSpec instances or (kind, omega, eps[, sign]) tuples
        omega_total: Declared bandlimit; defaults to the factor sum
    """
    specs = [f if isinstance(f, FactorSpec) else FactorSpec(*f) for f in factors]
    return ProductSignalSpec(tuple(specs), omega_total)


@dataclass(frozen=True)
class SuperoscillationRequest:
    """
    Parameters of one named build.

    Displacements come either from eps (explicit list) or from local_omega,
    in which case they are spaced pi/local_omega starting at start. For the
    antisymmetric family the derived displacements are eps, 2 eps, ...
    """

    family: str
    omega: float
    n: int
    eps: Optional[Tuple[float, ...]] = None
    local_omega: Optional[float] = None
    start: float = 0.0
    squared: bool = False
    bandlimits: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'family', normalize_family(self.family))
        if self.eps is not None:
            object.__setattr__(self, 'eps', tuple(float(e) for e in self.eps))
        if self.eps is not None and self.local_omega is not None:
            raise ValidationError("Give either explicit displacements or a local frequency, not both")

    def displacements(self) -> List[float]:
        count = (self.n - 1) // 2 if self.family == 'sine_antisymmetric' else self.n
        if self.eps is not None:
            return list(self.eps)
        if self.local_omega is None:
            if self.family == 'sinc_varied':
                return []
            raise ValidationError(f"Family {self.family} needs displacements or a local frequency")
        if self.family == 'sine_antisymmetric':
            spacing = math.pi / self.local_omega
            return epsilons_from_frequency(self.local_omega, count, start=spacing)
        return epsilons_from_frequency(self.local_omega, count, start=self.start)

    def build(self) -> ProductSignalSpec:
        if self.family == 'sine_translate':
            spec = build_periodic_translates(self.omega, self.n, self.displacements())
        elif self.family == 'sine_antisymmetric':
            spec = build_periodic_antisymmetric(self.omega, self.n, self.displacements(), squared=self.squared)
        elif self.family == 'sinc_translate':
            spec = build_sinc_translates(self.omega, self.n, self.displacements())
        else:
            spec = build_varied_bandwidth(self.bandlimits or varied_bandlimits(self.omega, self.n))

        logger.info("Built %s with %d factors, bandlimit %.6g", self.family, spec.n, spec.omega_total)
        return spec
