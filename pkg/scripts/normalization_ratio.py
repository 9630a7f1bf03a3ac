"""Compare the closed-form normalization constants with quadrature-forced ones.

For each state the ratio forced/closed-form is printed; a state-independent
ratio means the closed form has the right functional dependence.

    python3 scripts/normalization_ratio.py --mu1 1 --mu2 2 --max-level 4
"""

import argparse
from fractions import Fraction

import numpy as np

from dunkl_coulomb.operators import ModelParams
from dunkl_coulomb.spectra import states_up_to
from dunkl_coulomb.term_algebra import as_rational
from dunkl_coulomb.wavefunctions import full_wavefunction


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mu1", type=as_rational, default=Fraction(1, 4))
    ap.add_argument("--mu2", type=as_rational, default=Fraction(3, 4))
    ap.add_argument("--alpha", type=as_rational, default=Fraction(-1))
    ap.add_argument("--max-level", type=int, default=4)
    args = ap.parse_args()

    params = ModelParams(args.mu1, args.mu2, args.alpha)
    ratios = []
    for qn in states_up_to(params, args.max_level):
        b = full_wavefunction(qn, params)
        ratio = b.normalization_ratio()
        ratios.append(ratio)
        print(f"l={qn.l} 2n={qn.two_n} (e1,e2)=({qn.e1},{qn.e2})  closed={b.norm_constant:.12e}  ratio={ratio:.14f}")
    ratios = np.array(ratios)
    print(f"relative spread of the ratio: {np.ptp(ratios) / ratios.mean():.2e}")


if __name__ == "__main__":
    main()
