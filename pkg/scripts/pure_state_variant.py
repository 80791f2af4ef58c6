"""Pure-input variant of the quantumness integral versus Choi-state discord.

For unital channels the pure-state average coincides with D_G; for
nonunital ones it generally does not. This tabulates both along the amplitude
damping family.

    python scripts/pure_state_variant.py --samples 200000
"""

import argparse

import numpy as np

from chanquant.channels import amplitude_damping, generalized_depolarizing
from chanquant.quantumness import pure_state_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'channel':>24} {'mc':>9} {'se':>8} {'analytic':>9} {'d_g':>9} {'gap':>9}")
    cases = [(f"amplitude_damping({g:.2f})", amplitude_damping(g)) for g in np.linspace(0, 1, 11)]
    cases += [("depolarizing(0.7,...)", generalized_depolarizing([0.7, 0.1, 0.1, 0.1]))]
    for i, (name, ch) in enumerate(cases):
        rep = pure_state_report(ch, args.samples, args.seed + i)
        print(
            f"{name:>24} {rep.estimate:9.5f} {rep.std_error:8.1e} {rep.analytic:9.5f} "
            f"{rep.d_g:9.5f} {rep.discrepancy:+9.5f}"
        )


if __name__ == "__main__":
    main()
