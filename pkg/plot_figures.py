#!/usr/bin/env python3
"""
Render the tables written by generate_figures.py as PNG figures.

Usage:
    python3 plot_figures.py            # reads and writes SUPEROSC_OUTPUT_DIR
    python3 plot_figures.py --dir out  # another directory
"""

import argparse
import json
import sys
from pathlib import Path

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

from config import get_settings  # noqa: E402

REQUIRED = ('periodic_signal.csv', 'sinc_signal.csv', 'varied_signal.csv', 'scaling.csv', 'sine_potentials.csv',
            'potential_positive.csv', 'ground_state_positive.csv', 'potential_negative.csv',
            'ground_state_negative.csv', 'potential_summary.json')
LIFT_LABELS = ('positive', 'negative')


def _style(ax, title, xlabel='t', ylabel='value'):
    ax.set_title(title, fontsize=12, fontweight='bold')
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend(loc='best', fontsize=8)
    ax.grid(True, alpha=0.3)


def plot_signals(directory: Path):
    """Multiplicative builds against their additive counterparts, full view and zoom."""
    fig, axes = plt.subplots(3, 2, figsize=(15, 12))
    colors = plt.cm.tab10(range(10))

    for row, (name, title, zoom) in enumerate([
        ('periodic_signal.csv', 'Periodic sine product', (-0.1, 0.5)),
        ('sinc_signal.csv', 'Sinc product', (2.8, 3.2)),
        ('varied_signal.csv', 'Sinc product, varied bandlimits', (-1.0, 1.0)),
    ]):
        frame = pd.read_csv(directory / name)
        for col, window in enumerate((None, zoom)):
            ax = axes[row][col]
            view = frame if window is None else frame[(frame['t'] >= window[0]) & (frame['t'] <= window[1])]
            ax.plot(view['t'], view['multiplicative'], linewidth=2, label='multiplicative', color=colors[0])
            if 'additive' in view.columns:
                ax.plot(view['t'], view['additive'], linewidth=1.5, linestyle='--', label='additive',
                        color=colors[1], alpha=0.8)
            _style(ax, title if window is None else f'{title} (zoom)')

    plt.tight_layout()
    fig.savefig(directory / 'signals.png', dpi=150)
    plt.close(fig)


def plot_scaling(directory: Path):
    """log10 sigma with its bounds against N, one panel per family."""
    table = pd.read_csv(directory / 'scaling.csv')
    families = list(table['family'].unique())
    fig, axes = plt.subplots(1, len(families), figsize=(7 * len(families), 5), squeeze=False)
    colors = plt.cm.tab10(range(10))

    for ax, family in zip(axes[0], families):
        rows = table[table['family'] == family]
        for i, (eps, group) in enumerate(rows.groupby('eps')):
            color = colors[i % len(colors)]
            ax.semilogy(group['N'], group['sigma'], marker='o', linewidth=2, color=color, label=f'eps={eps:g}')
            ax.fill_between(group['N'], group['lower'], group['upper'], color=color, alpha=0.15)
        _style(ax, f'Dynamic range ({family})', xlabel='N', ylabel='sigma')

    plt.tight_layout()
    fig.savefig(directory / 'scaling.png', dpi=150)
    plt.close(fig)


def plot_sine_potentials(directory: Path):
    """V = psi''/(psi+C) for sin(x) at each exported lift."""
    frame = pd.read_csv(directory / 'sine_potentials.csv')
    columns = [c for c in frame.columns if c.startswith('V_C')]
    fig, axes = plt.subplots(len(columns), 1, figsize=(12, 3.5 * len(columns)), sharex=True, squeeze=False)

    for ax, column in zip(axes[:, 0], columns):
        # Clip the divergences so the finite part stays readable
        ax.plot(frame['x'], frame[column].clip(-10, 10), linewidth=2, label=column.replace('V_C', 'C = '))
        _style(ax, f"Lifted sine potential, {column.replace('V_C', 'C = ')}", xlabel='x', ylabel='V')

    plt.tight_layout()
    fig.savefig(directory / 'sine_potentials.png', dpi=150)
    plt.close(fig)


def plot_potential(directory: Path):
    """Lifted wave function, its potential and the computed ground state, for both lift signs."""
    summary = json.loads((directory / 'potential_summary.json').read_text())
    lo, hi = summary['region']
    fig, axes = plt.subplots(2, len(LIFT_LABELS), figsize=(15, 8), sharex=True, squeeze=False)

    for col, label in enumerate(LIFT_LABELS):
        potential = pd.read_csv(directory / f'potential_{label}.csv')
        ground = pd.read_csv(directory / f'ground_state_{label}.csv')
        details = summary[label]
        lifted = ground['psi_lifted'] / np.max(np.abs(ground['psi_lifted']))
        vec = ground['ground_vec'] / np.max(np.abs(ground['ground_vec']))

        top, bottom = axes[0][col], axes[1][col]
        top.plot(ground['x'], lifted, linewidth=2, label='psi + C (scaled)')
        top.plot(ground['x'], vec, linewidth=1.5, linestyle='--', label='ground state (scaled)')
        bottom.plot(potential['x'], potential['V'], linewidth=1.5, color='black', label='V')
        for ax in (top, bottom):
            ax.axvspan(lo, hi, color='red', alpha=0.1, label='superoscillating region')
        _style(top, f"{label.capitalize()} lift, E0 = {details['ground_state']['E0']:.2e}", xlabel='x')
        _style(bottom, f"Potential, extrema density ratio {details['oscillation']['ratio']:.2f}",
               xlabel='x', ylabel='V')

    plt.tight_layout()
    fig.savefig(directory / 'potential.png', dpi=150)
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(description='Render superoscillation figures')
    parser.add_argument('--dir', default=None, help='Directory holding the generated tables')
    args = parser.parse_args(argv)
    directory = Path(args.dir or get_settings().output_dir)

    missing = [name for name in REQUIRED if not (directory / name).exists()]
    if missing:
        print(f"✗ Missing in {directory}: {', '.join(missing)}")
        print("  Run generate_figures.py first")
        return 1

    plot_signals(directory)
    plot_scaling(directory)
    plot_sine_potentials(directory)
    plot_potential(directory)
    print(f"✓ Figures written to {directory}: signals.png, scaling.png, sine_potentials.png, potential.png")
    return 0


if __name__ == "__main__":
    sys.exit(main())
