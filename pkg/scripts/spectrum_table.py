"""Print energies and degeneracies per level, and compare with the mu = 0 hydrogen-like limit.

    python3 scripts/spectrum_table.py --mu1 1/4 --mu2 3/4 --max-level 5
"""

import argparse
from fractions import Fraction

from dunkl_coulomb.operators import ModelParams
from dunkl_coulomb.spectra import energy, enumerate_level
from dunkl_coulomb.term_algebra import as_rational


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mu1", type=as_rational, default=Fraction(0))
    ap.add_argument("--mu2", type=as_rational, default=Fraction(0))
    ap.add_argument("--alpha", type=as_rational, default=Fraction(-1))
    ap.add_argument("--max-level", type=int, default=5)
    args = ap.parse_args()

    params = ModelParams(args.mu1, args.mu2, args.alpha)
    print(f"{'N':>3} {'deg':>4} {'E':>14} {'E (mu=0)':>14}")
    for N in range(args.max_level + 1):
        level = enumerate_level(params, N)
        e = energy(params, level[0])
        e0 = -params.alpha**2 / (2 * (N + Fraction(1, 2)) ** 2)
        print(f"{N:>3} {len(level):>4} {str(e):>14} {str(e0):>14}")


if __name__ == "__main__":
    main()
