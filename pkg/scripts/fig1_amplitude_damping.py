"""Quantumness and geometric discord of the amplitude damping channel.

Writes the sweep CSV and reports the largest deviation from the piecewise
closed forms together with where the optimal basis leaves the xy plane.

    python scripts/fig1_amplitude_damping.py --out results/amplitude_damping.csv
"""

import argparse
from pathlib import Path

import numpy as np

from chanquant.bipartite import choi_state, geometric_discord_b
from chanquant.channels import amplitude_damping
from chanquant.cli import SweepSpec, write_sweep
from chanquant.numerics import sym_eig3
from chanquant.quantumness import optimal_axis_class, quantumness


def closed_forms(g):
    q = (6 * g * g - 3 * g + 2) / 2 if g <= 1 / 6 else 1 - g
    d = (2 * g * g - 3 * g + 2) / 2 if g <= 0.5 else 1 - g
    return q, d


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--step", type=float, default=1e-3)
    ap.add_argument("--out", type=Path, default=Path("results/amplitude_damping.csv"))
    args = ap.parse_args()

    spec = SweepSpec("amplitude_damping", 0.0, 1.0, args.step)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w") as fh:
        write_sweep(spec, fh)

    dq = dd = 0.0
    first_z_q = first_z_d = None
    for g in np.clip(spec.points(), 0.0, 1.0):
        ch = amplitude_damping(g)
        rep = quantumness(ch)
        disc = geometric_discord_b(choi_state(ch))
        q, d = closed_forms(g)
        dq, dd = max(dq, abs(rep.q - q)), max(dd, abs(disc.d_g - d))
        if first_z_q is None and optimal_axis_class(*sym_eig3(rep.m_matrix)) == "z":
            first_z_q = g
        if first_z_d is None and optimal_axis_class(*sym_eig3(disc.k_matrix)) == "z":
            first_z_d = g

    print(f"wrote {args.out} ({len(spec.points())} rows)")
    print(f"max |Q - closed form|   = {dq:.2e}")
    print(f"max |D_G - closed form| = {dd:.2e}")
    print(f"optimal axis for Q first along z at gamma = {first_z_q}")
    print(f"optimal axis for D_G first along z at gamma = {first_z_d}")


if __name__ == "__main__":
    main()
