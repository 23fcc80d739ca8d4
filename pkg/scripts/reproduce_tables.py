"""Condition-number tables for the two worked 4x4 examples.

Prints the 4-decimal tables and, with --out, writes full-precision CSV
next to them.  The second example is the first with H3 scaled by 0.1.
"""

import argparse
from pathlib import Path

from hamcond.cli import load_matrix, render_report
from hamcond.conditioning import analyze

DATA = Path(__file__).resolve().parents[1] / "data"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, help="directory for CSV output")
    p.add_argument("--branch", choices=["quarter", "minimal"], default="quarter",
                   help="root of the real phase equation used for the case tag")
    args = p.parse_args()

    for name in ("example41", "example42"):
        reports = analyze(load_matrix(DATA / f"{name}.json"), branch=args.branch)
        print(f"# {name}")
        print(render_report(reports))
        for r in reports:
            print(f"  lambda={r.lam:.4f}  D_xi={r.D_xi:.6f}  D_eta={r.D_eta:.6f}")
        print()
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{name}_table.csv").write_text(render_report(reports, "csv"))


if __name__ == "__main__":
    main()
