"""Monte-Carlo coverage of the closed-form structured condition numbers.

For each example eigenvalue and structure, reports the best sampled ratio
|y*Gx|/|y*x| as a fraction of the closed form, for growing sample counts.
The fraction must never exceed one; how close it gets shows how sparsely
random directions cover the unit sphere of the structure space.
"""

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from hamcond.cli import load_matrix
from hamcond.conditioning import kappa_ham_complex, kappa_ham_real
from hamcond.eigentriple import eigen_decompose, normalize_complex, normalize_real
from hamcond.hamcore import StructureTag
from hamcond.perturblab import mc_oracle

DATA = Path(__file__).resolve().parents[1] / "data"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, nargs="+", default=[10**3, 10**4, 10**5])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    args = p.parse_args()

    cases = {name: load_matrix(DATA / f"{name}.json") for name in ("example41", "example42")}
    cases["J"] = np.array([[0.0, 1.0], [-1.0, 0.0]])
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["case", "structure", "samples", "mc_max", "closed_form", "coverage"])
    for name, Q in cases.items():
        t = max(eigen_decompose(Q), key=lambda s: (s.lam.real, s.lam.imag))
        closed = {
            StructureTag.HAM_COMPLEX: kappa_ham_complex(normalize_complex(t)[0]),
            StructureTag.HAM_REAL: kappa_ham_real(normalize_real(t)[0]).kappa,
        }
        for tag, k in closed.items():
            for n in args.samples:
                val, _ = mc_oracle(t, tag, n, args.seed, workers=args.workers)
                w.writerow([name, tag.value, n, repr(val), repr(k), f"{val / k:.4f}"])


if __name__ == "__main__":
    main()
