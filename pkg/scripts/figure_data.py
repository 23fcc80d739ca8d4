"""Sweep data behind the two eigenvalue-perturbation figures.

For the first-quadrant eigenvalue of each example this writes one CSV with
the unstructured circle, the complex and real worst-case points, the
theta-family and a cloud of random real Hamiltonian directions, all at
Frobenius norm eps.  Plotting is left to external tools; the ``family``
column separates the series.
"""

import argparse
from pathlib import Path

import numpy as np

from hamcond.cli import load_matrix, sweep_csv
from hamcond.eigentriple import eigen_decompose
from hamcond.perturblab import Family, SweepConfig, predicted_radius, sweep_family

DATA = Path(__file__).resolve().parents[1] / "data"


def first_quadrant(Q):
    return max(eigen_decompose(Q), key=lambda t: (t.lam.real > 0) + (t.lam.imag > 0))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=Path("figure_data"))
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--theta-steps", type=int, default=360)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    cfg = SweepConfig(eps=args.eps, theta_steps=args.theta_steps, samples=args.samples, seed=args.seed)
    args.out.mkdir(parents=True, exist_ok=True)

    for name in ("example41", "example42"):
        Q = load_matrix(DATA / f"{name}.json")
        t = first_quadrant(Q)
        records = []
        for fam in Family:
            recs = sweep_family(Q, t, fam, cfg)
            records.extend(recs)
            mags = np.abs([r.displacement for r in recs])
            line = f"{name} {fam.value:>13}: {len(recs):4d} points, |d lambda| in [{mags.min():.4e}, {mags.max():.4e}]"
            if fam is not Family.RANDOM_STRUCTURED:
                line += f", first-order radius {predicted_radius(t, fam) * cfg.eps:.4e}"
            print(line)
        path = args.out / f"{name}_sweeps.csv"
        path.write_text(sweep_csv(records))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
