#!/usr/bin/env python3
"""
Superoscillation Figure Data - Quick Start Script

Customize the configuration section below and run:
    python3 generate_figures.py

Writes CSV/JSON tables for every figure into the output directory
(SUPEROSC_OUTPUT_DIR, default ./output). Render them with plot_figures.py.
"""

import json
import math
from pathlib import Path

import numpy as np
import pandas as pd

from additive_baseline import matched_constraints, min_energy_interpolant
from analysis import CSV_FLOAT_FORMAT, compare_methods, default_region, sample_uniform, scaling_table
from config import configure_logging, get_settings
from constructors import build_periodic_translates, build_sinc_translates, build_varied_bandwidth, varied_bandlimits
from quantum import build_potential, lift_for, potential_oscillation_report, solve_ground_state
from signal_core import HarmonicSum, fundamental_domain

# ============================================================================
# CONFIGURATION - CUSTOMIZE THESE VALUES
# ============================================================================

# Total bandlimit of every build
OMEGA = math.pi

# Periodic sine product with zeros spaced 0.1
PERIODIC_SHIFTS = [0.0, 0.1, 0.2, 0.3, 0.4]

# Sinc product with zeros spaced 0.1 around t = 3
SINC_SHIFTS = [-0.1, 0.0, 0.1]

# Number of sinc factors with different bandlimits
VARIED_FACTORS = 7

# Dynamic-range scaling matrix
SCALING_NS = [3, 5, 7, 9]
SCALING_EPS = [0.05, 0.1, 0.2]

# Superoscillating wave function for the potential
POTENTIAL_SHIFTS = [0.0, 0.1, 0.2, 0.3, 0.4]

# Lifts of sin(x) shown side by side (crossing, critical, sufficient)
SINE_LIFTS = [0.0, 1.0, 2.0]

# Samples per plotted curve
CURVE_SAMPLES = 4001

# ============================================================================
# DO NOT MODIFY BELOW THIS LINE (unless you know what you're doing)
# ============================================================================


def _curve(spec, lo, hi, additive=None):
    dt = (hi - lo) / (CURVE_SAMPLES - 1)
    frame = sample_uniform(spec, lo, dt, CURVE_SAMPLES).to_frame().rename(columns={'value': 'multiplicative'})
    if additive is not None:
        frame['additive'] = np.asarray(additive.evaluate(frame['t'].to_numpy()), dtype=float)
    return frame


def _additive(spec, bits):
    constraints, kernel_args = matched_constraints(spec)
    return min_energy_interpolant(constraints, precision_bits=bits, **kernel_args)


def _save(frame, path):
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    print(f"  ✓ {path.name} ({len(frame):,} rows)")


def main():
    """Main function to generate figure data"""
    settings = get_settings()
    configure_logging()
    out = Path(settings.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    print("=" * 70)
    print("SUPEROSCILLATION FIGURE DATA")
    print("=" * 70)
    print(f"\nConfiguration:")
    print(f"  Bandlimit: {OMEGA:.6g}")
    print(f"  Periodic shifts: {PERIODIC_SHIFTS}")
    print(f"  Sinc shifts: {SINC_SHIFTS}")
    print(f"  Varied-bandwidth factors: {VARIED_FACTORS}")
    print(f"  Scaling matrix: N in {SCALING_NS}, eps in {SCALING_EPS}")
    print(f"  Working precision: {settings.precision_bits} bits")
    print(f"  Output directory: {out}")
    print()

    print("Signals (multiplicative vs additive)...")
    periodic = build_periodic_translates(OMEGA, len(PERIODIC_SHIFTS), PERIODIC_SHIFTS)
    lo, hi = fundamental_domain(periodic)
    _save(_curve(periodic, lo, hi, _additive(periodic, settings.precision_bits)), out / 'periodic_signal.csv')

    sinc = build_sinc_translates(OMEGA, len(SINC_SHIFTS), SINC_SHIFTS)
    _save(_curve(sinc, -10.0, 10.0, _additive(sinc, settings.precision_bits)), out / 'sinc_signal.csv')

    varied = build_varied_bandwidth(varied_bandlimits(OMEGA, VARIED_FACTORS))
    _save(_curve(varied, -30.0, 30.0), out / 'varied_signal.csv')

    comparisons = {
        'periodic': compare_methods(periodic, precision_bits=settings.precision_bits).to_dict(),
        'sinc': compare_methods(sinc, precision_bits=settings.precision_bits).to_dict(),
    }
    (out / 'comparison.json').write_text(json.dumps(comparisons, indent=2) + '\n')
    print(f"  ✓ comparison.json")
    print()

    print("Dynamic-range scaling...")
    tables = [scaling_table(SCALING_NS, SCALING_EPS, family, OMEGA, settings.dynrange_samples)
              for family in ('sine_translate', 'sinc_translate')]
    _save(pd.concat(tables, ignore_index=True), out / 'scaling.csv')
    print()

    print("Lifted sine potentials...")
    sine = HarmonicSum(1.0, ((1, 0.0, 1.0),))
    lifted = {lift: build_potential(sine, lift, settings.grid) for lift in SINE_LIFTS}
    sine_frame = pd.DataFrame({'x': lifted[SINE_LIFTS[0]].x})
    for lift, potential in lifted.items():
        sine_frame[f'V_C{lift:g}'] = potential.V
    _save(sine_frame, out / 'sine_potentials.csv')
    print()

    print("Superoscillating potentials and ground states...")
    psi = build_periodic_translates(OMEGA, len(POTENTIAL_SHIFTS), POTENTIAL_SHIFTS)
    region = default_region(psi)
    summaries = {'region': list(region)}
    for sign, label in ((1, 'positive'), (-1, 'negative')):
        lift = lift_for(psi, sign, settings.lift_margin)
        potential = build_potential(psi, lift, settings.grid)
        potential.to_csv(out / f'potential_{label}.csv')
        report = solve_ground_state(potential)
        report.to_csv(out / f'ground_state_{label}.csv')
        oscillation = potential_oscillation_report(potential, region)
        summaries[label] = {
            'potential': potential.summary(),
            'ground_state': report.summary(),
            'oscillation': oscillation.to_dict(),
        }
        print(f"  ✓ potential_{label}.csv / ground_state_{label}.csv "
              f"(C={lift:.6g}, E0={report.E0:.3e}, nodes={report.node_count}, "
              f"extrema density ratio {oscillation.ratio:.2f})")
    (out / 'potential_summary.json').write_text(json.dumps(summaries, indent=2) + '\n')
    print(f"  ✓ potential_summary.json")

    # Summary
    print()
    print("=" * 70)
    print("GENERATION COMPLETE!")
    print("=" * 70)
    print(f"\nSummary:")
    for name, comparison in comparisons.items():
        print(f"  {name}: sigma multiplicative {comparison['sigma_multiplicative']:.3e}, "
              f"additive {comparison['sigma_additive']:.3e} (cond {comparison['cond']:.2e})")
    print()
    print("Next Steps:")
    print("  1. Review the CSV files")
    print("  2. Render figures: python3 plot_figures.py")
    print()


if __name__ == "__main__":
    main()
