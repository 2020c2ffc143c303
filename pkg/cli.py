#!/usr/bin/env python3
"""
Superoscillation toolkit - command line front end

Every subcommand writes its artifacts (CSV/JSON) and prints a one-line JSON
summary on stdout. Progress and diagnostics go to stderr.

Usage:
    python cli.py synth --family sine-translate --omega pi --n 3 --eps 0,0.1,0.2 --out spec.json
    python cli.py spectrum --spec spec.json --out spectrum.csv
    python cli.py zeros --spec spec.json --range=-0.5,0.7 --out zeros.csv
    python cli.py dynrange --spec spec.json --region auto --out dynrange.json
    python cli.py bounds --family sine-translate --n 5 --eps 0.1
    python cli.py compare --spec spec.json --region auto --precision-bits 128
    python cli.py potential --spec spec.json --lift auto-critical --grid 2048 --out potential.csv
    python cli.py eigen --potential potential.csv --out ground.csv

Negative values must be attached with '=' (--eps=-0.1,0,0.1) so they are
not mistaken for options.

Exit status: 0 success, 1 invalid input or usage, 2 numerical failure.
"""

import argparse
import ast
import json
import logging
import math
import operator
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd

from analysis import (CSV_FLOAT_FORMAT, compare_methods, dynamic_range, find_zeros, local_frequencies, periodic_spectrum,
                      sample_uniform, sigma_bounds, verify_bandlimit)
from config import configure_logging, get_settings
from constructors import FAMILIES, SuperoscillationRequest
from errors import NumericalError, SingularPotentialError, SuperoscillationError, ValidationError
from quantum import STATUS_OK, build_potential, lift_for, potential_from_frame, solve_ground_state
from signal_core import ProductSignalSpec

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('synth', 'spectrum', 'zeros', 'dynrange', 'bounds', 'compare', 'potential', 'eigen')

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2

_OPERATORS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}


def _evaluate(node):
    if isinstance(node, ast.Expression):
        return _evaluate(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == 'pi':
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _OPERATORS:
        return _OPERATORS[type(node.op)](_evaluate(node.left), _evaluate(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _OPERATORS:
        return _OPERATORS[type(node.op)](_evaluate(node.operand))
    raise ValueError("unsupported expression")


def parse_angular(text: str) -> float:
    """
    Parse a number that may mention pi: '3.5', 'pi', 'pi/3', '2*pi', '-0.1'.

    Raises:
        ValidationError: If the text is not such an expression
    """
    try:
        value = _evaluate(ast.parse(text.strip(), mode='eval'))
    except (SyntaxError, ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"Cannot parse {text!r} as a number (pi allowed)") from e
    if not math.isfinite(value):
        raise ValidationError(f"{text!r} is not finite")
    return value


def parse_list(text: str) -> List[float]:
    """Comma-separated numbers; an empty string gives an empty list."""
    if text.strip() == '':
        return []
    return [parse_angular(part) for part in text.split(',')]


def parse_interval(text: str) -> tuple:
    values = parse_list(text)
    if len(values) != 2 or not values[1] > values[0]:
        raise ValidationError(f"Expected an interval 'lo,hi' with lo < hi, got {text!r}")
    return values[0], values[1]


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(prog='cli.py', description='Construct and analyse superoscillating signals')
    parser.add_argument('--log-level', default=None, help='Override SUPEROSC_LOG_LEVEL')
    sub = parser.add_subparsers(dest='subcommand', metavar='subcommand')
    sub.required = True

    families = ', '.join(f.replace('_', '-') for f in FAMILIES)

    p = sub.add_parser('synth', help='Build a product signal spec')
    p.add_argument('--family', required=True, help=f'One of: {families}')
    p.add_argument('--omega', required=True, help='Total bandlimit (pi allowed)')
    p.add_argument('--n', type=int, required=True, help='Number of factors')
    shifts = p.add_mutually_exclusive_group()
    shifts.add_argument('--eps', help='Comma-separated displacements')
    shifts.add_argument('--local-omega', help='Target local frequency; displacements spaced pi/omega')
    p.add_argument('--out', required=True, help='Spec JSON to write')

    p = sub.add_parser('spectrum', help='Check the bandlimit of a spec')
    p.add_argument('--spec', required=True)
    window = p.add_mutually_exclusive_group()
    window.add_argument('--period', help='Sample exactly this period')
    window.add_argument('--window', help='Half-width of a tapered analysis window')
    p.add_argument('--tol', type=float, default=1e-10)
    p.add_argument('--out', help='CSV omega,magnitude')

    p = sub.add_parser('zeros', help='Locate zeros and local frequencies')
    p.add_argument('--spec', required=True)
    p.add_argument('--range', required=True, dest='interval', help="Scan interval 'lo,hi'")
    p.add_argument('--scan-dt', type=float, default=None)
    p.add_argument('--tol', type=float, default=None)
    p.add_argument('--out', help='CSV t,kind')

    p = sub.add_parser('dynrange', help='Measure the dynamic range')
    p.add_argument('--spec', required=True)
    p.add_argument('--region', default='auto', help="'lo,hi' or auto")
    p.add_argument('--out', help='Report JSON')

    p = sub.add_parser('bounds', help='Dynamic-range bounds of a uniform build')
    p.add_argument('--family', required=True, help='sine-translate or sinc-translate')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--eps', required=True)
    p.add_argument('--omega', default='pi')

    p = sub.add_parser('compare', help='Multiplicative vs additive dynamic range')
    p.add_argument('--spec', required=True)
    p.add_argument('--region', default='auto', help="'lo,hi' or auto")
    p.add_argument('--precision-bits', type=int, default=None)

    p = sub.add_parser('potential', help='Reverse-engineer the potential of a lifted spec')
    p.add_argument('--spec', required=True)
    p.add_argument('--lift', required=True, help='Lift C, or auto-critical')
    p.add_argument('--grid', type=int, default=None)
    p.add_argument('--out', required=True, help='CSV x,V (a .json sidecar is written next to it)')

    p = sub.add_parser('eigen', help='Ground state of an exported potential')
    p.add_argument('--potential', required=True, help='CSV written by the potential subcommand')
    p.add_argument('--out', help='CSV x,psi_lifted,ground_vec')

    return parser


@dataclass
class RunConfig:
    """One parsed invocation; identical configs give identical artifacts."""

    subcommand: str
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValidationError(f"Unknown subcommand {self.subcommand!r}")

    @classmethod
    def from_args(cls, argv: Optional[Sequence[str]] = None) -> 'RunConfig':
        args = vars(build_parser().parse_args(argv))
        return cls(args.pop('subcommand'), args)

    def get(self, name, default=None):
        value = self.options.get(name)
        return default if value is None else value


def _load_spec(path: str) -> ProductSignalSpec:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ValidationError(f"Cannot read spec {path}: {e}") from e
    return ProductSignalSpec.from_json(text)


def _write_json(path: str, payload: dict):
    Path(path).write_text(json.dumps(payload) + '\n')


def _sidecar(path: str) -> Path:
    return Path(path).with_suffix('.json')


def _region(text: str):
    return None if text.strip().lower() == 'auto' else parse_interval(text)


def _synth(config: RunConfig) -> dict:
    eps = config.get('eps')
    local = config.get('local_omega')
    request = SuperoscillationRequest(
        family=config.get('family'),
        omega=parse_angular(config.get('omega')),
        n=config.get('n'),
        eps=tuple(parse_list(eps)) if eps is not None else None,
        local_omega=parse_angular(local) if local is not None else None,
    )
    spec = request.build()
    Path(config.get('out')).write_text(spec.to_json() + '\n')
    print(f"✓ Wrote {spec.n}-factor {request.family} spec to {config.get('out')}", file=sys.stderr)
    return {'out': config.get('out'), 'family': request.family, 'n_factors': spec.n,
            'omega_total': spec.omega_total, 'fingerprint': spec.fingerprint()}


def _spectrum(config: RunConfig) -> dict:
    settings = get_settings()
    spec = _load_spec(config.get('spec'))
    tol = config.get('tol')

    if config.get('period') is not None:
        period = parse_angular(config.get('period'))
        n = settings.spectrum_samples
        report = periodic_spectrum(sample_uniform(spec, 0.0, period / n, n, settings.workers), period, spec.omega_total)
        fraction = report.out_band_fraction
        summary = {**report.summary(), 'tol': tol, 'passed': fraction <= tol}
    else:
        window = parse_angular(config.get('window')) if config.get('window') is not None else None
        if window is None and not spec.is_periodic:
            window = settings.window
        report = verify_bandlimit(spec, tol=tol, window=window, samples=settings.spectrum_samples,
                                  taper_fraction=settings.taper_fraction)
        summary = report.summary()

    if config.get('out'):
        report.to_csv(config.get('out'))
    mark = '✓' if summary['passed'] else '✗'
    print(f"{mark} Out-of-band fraction {report.out_band_fraction:.3e} (tol {tol:.1e})", file=sys.stderr)
    return summary


def _zeros(config: RunConfig) -> dict:
    settings = get_settings()
    spec = _load_spec(config.get('spec'))
    lo, hi = parse_interval(config.get('interval'))
    zeros = find_zeros(spec, lo, hi, config.get('scan_dt', settings.scan_dt), config.get('tol', settings.zero_tol))
    if config.get('out'):
        zeros.to_frame().to_csv(config.get('out'), index=False, float_format=CSV_FLOAT_FORMAT)

    summary = {'count': len(zeros), 'touches': int(zeros.touches.size), 'zeros': [float(z) for z in zeros.zeros]}
    if len(zeros) >= 2:
        freqs = local_frequencies(zeros)
        summary['max_local_omega'] = max(w for _, w in freqs)
        summary['declared_omega'] = spec.omega_total
    print(f"✓ Found {len(zeros)} zeros on [{lo}, {hi}]", file=sys.stderr)
    return summary


def _dynrange(config: RunConfig) -> dict:
    settings = get_settings()
    spec = _load_spec(config.get('spec'))
    report = dynamic_range(spec, _region(config.get('region')), settings.dynrange_samples)
    if config.get('out'):
        _write_json(config.get('out'), report.to_dict())
    print(f"✓ sigma = {report.sigma:.6e} on region {report.region}", file=sys.stderr)
    return report.to_dict()


def _bounds(config: RunConfig) -> dict:
    eps = parse_angular(config.get('eps'))
    omega = parse_angular(config.get('omega'))
    lower, upper = sigma_bounds(config.get('family'), config.get('n'), eps, omega)
    print(f"✓ {lower:.6e} <= sigma <= {upper:.6e}", file=sys.stderr)
    return {'family': config.get('family'), 'N': config.get('n'), 'eps': eps, 'omega': omega,
            'lower': lower, 'upper': upper}


def _compare(config: RunConfig) -> dict:
    settings = get_settings()
    spec = _load_spec(config.get('spec'))
    bits = config.get('precision_bits', settings.precision_bits)
    report = compare_methods(spec, _region(config.get('region')), bits, settings.dynrange_samples)
    print(f"✓ sigma ratio additive/multiplicative = {report.ratio:.4g} (cond {report.cond:.3e})", file=sys.stderr)
    return report.to_dict()


def _potential(config: RunConfig) -> dict:
    settings = get_settings()
    spec = _load_spec(config.get('spec'))
    lift_text = config.get('lift').strip().lower()
    if lift_text == 'auto-critical':
        lift = lift_for(spec, 1, settings.lift_margin)
    else:
        lift = parse_angular(lift_text)

    potential = build_potential(spec, lift, config.get('grid', settings.grid))
    out = config.get('out')
    potential.to_csv(out)
    _write_json(_sidecar(out), {**potential.summary(), 'spec': spec.to_dict()})

    if potential.status != STATUS_OK:
        raise SingularPotentialError(
            f"Lift C={lift:.6g} leaves {int(potential.singular.sum())} singular grid points: {potential.status}"
        )
    print(f"✓ Potential with C={lift:.6g} written to {out}", file=sys.stderr)
    return {**potential.summary(), 'out': out}


def _eigen(config: RunConfig) -> dict:
    path = config.get('potential')
    sidecar = _sidecar(path)
    try:
        meta = json.loads(sidecar.read_text())
        frame = pd.read_csv(path)
    except (OSError, ValueError) as e:
        raise ValidationError(f"Cannot read potential {path} and its sidecar {sidecar}: {e}") from e

    missing = [key for key in ('spec', 'C') if not isinstance(meta, dict) or key not in meta]
    if missing:
        raise ValidationError(f"Potential sidecar {sidecar} is missing {', '.join(missing)}")
    if isinstance(meta['C'], bool) or not isinstance(meta['C'], (int, float)):
        raise ValidationError(f"Potential sidecar {sidecar} has a non-numeric lift {meta['C']!r}")
    spec = ProductSignalSpec.from_json(meta['spec'])
    potential = potential_from_frame(frame, spec, meta['C'], meta.get('status'))
    report = solve_ground_state(potential)
    if config.get('out'):
        report.to_csv(config.get('out'))
    mark = '✓' if report.node_count == 0 else '⚠️ '
    print(f"{mark} E0={report.E0:.6e}, nodes={report.node_count}, overlap={report.overlap:.8f}", file=sys.stderr)
    return report.summary()


HANDLERS = {
    'synth': _synth,
    'spectrum': _spectrum,
    'zeros': _zeros,
    'dynrange': _dynrange,
    'bounds': _bounds,
    'compare': _compare,
    'potential': _potential,
    'eigen': _eigen,
}


def run(config: RunConfig) -> int:
    """
    Execute one subcommand.

    Returns:
        0 on success, 1 on invalid input, 2 on numerical failure
    """
    try:
        summary = HANDLERS[config.subcommand](config)
    except ValidationError as e:
        print(f"✗ {config.subcommand}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as e:
        print(f"✗ {config.subcommand}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SuperoscillationError as e:
        print(f"✗ {config.subcommand}: {e}", file=sys.stderr)
        return EXIT_INVALID

    print(json.dumps(summary))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = RunConfig.from_args(argv)
        configure_logging(config.get('log_level'))
    except ValidationError as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_INVALID
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
