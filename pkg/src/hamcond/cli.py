"""Command line front end.

Matrices travel as JSON documents ``{"n": int, "rows": [[entry, ...], ...]}``
where an entry is a number or an ``[re, im]`` pair.

Exit codes: 0 ok, 2 bad input, 3 eigenvalue not simple, 4 degenerate
projection, 5 numerical failure.
"""

import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from .conditioning import (
    analyze,
    e_theta,
    is_real_matrix,
    kappa_ham_complex,
    kappa_ham_real,
    worst_perturbation_complex,
    worst_perturbation_real,
)
from .eigentriple import assert_simple, eigen_decompose, normalize_complex, normalize_real
from .errors import HamcondError, InvalidDimension, StructureMismatch
from .hamcore import (
    StructureTag,
    as_matrix,
    distance_to_structure,
    frobenius_norm,
    project,
    random_hamiltonian,
)
from .perturblab import Family, SweepConfig, mc_oracle, sweep_family

log = logging.getLogger("hamcond")

SWEEP_COLUMNS = ["family", "parameter", "re_lambda", "im_lambda", "re_displacement", "im_displacement", "predicted"]
REPORT_COLUMNS = ["re_lambda", "im_lambda", "kappa", "kappa_ham_complex", "kappa_ham_real", "case_tag"]


class InputError(HamcondError):
    exit_code = 2


# -- matrix documents ---------------------------------------------------------


def _entry(v):
    if isinstance(v, bool):
        raise InputError("booleans are not matrix entries")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v):
        return complex(v[0], v[1])
    raise InputError(f"bad matrix entry {v!r}")


def parse_matrix(doc):
    if not isinstance(doc, dict) or "rows" not in doc:
        raise InputError("matrix document needs a 'rows' field")
    rows = doc["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("'rows' must be a list of lists")
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise InputError("matrix is not square")
    if size == 0 or size % 2:
        raise InputError(f"matrix order must be even and positive, got {size}")
    if "n" in doc and doc["n"] != size // 2:
        raise InputError(f"declared n={doc['n']} does not match {size}x{size} rows")
    A = np.array([[_entry(v) for v in r] for r in rows], dtype=complex)
    if not np.all(np.isfinite(A)):
        raise InputError("matrix has non-finite entries")
    if np.all(A.imag == 0):
        A = A.real.copy()
    return as_matrix(A)


def load_matrix(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read matrix from {path}: {exc}") from exc
    return parse_matrix(doc)


def matrix_document(A, **extra):
    A = np.asarray(A)
    if np.iscomplexobj(A) and np.any(A.imag != 0):
        rows = [[[float(v.real), float(v.imag)] for v in r] for r in A]
    else:
        rows = [[float(v) for v in r] for r in np.real(A)]
    doc = {"n": A.shape[0] // 2, "rows": rows}
    doc.update(extra)
    return doc


def write_matrix(A, path=None, **extra):
    text = json.dumps(matrix_document(A, **extra))
    if path is None:
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


# -- reports ------------------------------------------------------------------


def _fmt_lambda(lam):
    sign = "+" if lam.imag >= 0 else "-"
    return f"{lam.real:.4f} {sign} {abs(lam.imag):.4f}i"


def render_report(reports, mode="table"):
    """Format condition reports as a 4-decimal table or a full-precision CSV."""
    if not reports:
        log.warning("no eigenvalues to report")
        return ""
    if mode == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for r in reports:
            kh = "n/a" if r.kappa_ham_real is None else repr(r.kappa_ham_real)
            w.writerow([repr(r.lam.real), repr(r.lam.imag), repr(r.kappa), repr(r.kappa_ham_complex), kh, r.case_tag.value])
        return buf.getvalue()
    header = f"{'lambda':>20} | {'kappa':>8} | {'kappa_HC':>8} | {'kappa_H':>8} | case"
    lines = [header, "-" * len(header)]
    for r in reports:
        kh = "n/a" if r.kappa_ham_real is None else f"{r.kappa_ham_real:.4f}"
        lines.append(
            f"{_fmt_lambda(r.lam):>20} | {r.kappa:8.4f} | {r.kappa_ham_complex:8.4f} | {kh:>8} | {r.case_tag.value}"
        )
    return "\n".join(lines) + "\n"


def sweep_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in records:
        w.writerow([
            r.family.value, repr(float(r.parameter)),
            repr(r.perturbed_lambda.real), repr(r.perturbed_lambda.imag),
            repr(r.displacement.real), repr(r.displacement.imag), repr(float(r.predicted)),
        ])
    return buf.getvalue()


# -- subcommands --------------------------------------------------------------


def _triple(Q, index):
    triples = eigen_decompose(Q)
    if not 0 <= index < len(triples):
        raise InputError(f"eigenvalue index {index} out of range 0..{len(triples) - 1}")
    assert_simple(triples, index, q_norm=frobenius_norm(Q))
    return triples[index]


def _require_real(Q):
    if not is_real_matrix(Q):
        raise StructureMismatch("real Hamiltonian perturbations need a real matrix")


def cmd_analyze(args):
    Q = load_matrix(args.matrix)
    real = None
    if args.real_perturbations:
        _require_real(Q)
        real = True
    reports = analyze(Q, real_perturbations=real, tol=args.tol)
    sys.stdout.write(render_report(reports, args.format))
    return 0


def cmd_project(args):
    A = load_matrix(args.matrix)
    P = project(A, args.structure)
    print(f"distance {distance_to_structure(A, args.structure)!r}", file=sys.stderr if args.out is None else sys.stdout)
    write_matrix(P, args.out)
    return 0


def cmd_worst(args):
    Q = load_matrix(args.matrix)
    t = _triple(Q, args.eigenvalue_index)
    tag = StructureTag(args.structure)
    if tag is StructureTag.HAM_COMPLEX:
        tc, _ = normalize_complex(t)
        E = worst_perturbation_complex(tc)[0]
        write_matrix(E.matrix, args.out, structure=tag.value, kappa=float(kappa_ham_complex(tc)),
                     attained_ratio=E.attained_ratio)
        return 0
    if tag is not StructureTag.HAM_REAL:
        raise InputError("worst supports ham-complex and ham-real")
    _require_real(Q)
    tr, _ = normalize_real(t)
    rc = kappa_ham_real(tr)
    if args.theta is not None:
        E = e_theta(tr, args.theta)
    else:
        E = worst_perturbation_real(tr).representatives()[0]
    write_matrix(E.matrix.real, args.out, structure=tag.value, kappa=rc.kappa, case=rc.case_tag.value,
                 theta=E.theta, attained_ratio=E.attained_ratio)
    return 0


def cmd_sweep(args):
    Q = load_matrix(args.matrix)
    t = _triple(Q, args.eigenvalue_index)
    cfg = SweepConfig(eps=args.eps, theta_steps=args.theta_steps, samples=args.samples, seed=args.seed)
    families = [Family(f.strip()) for f in args.families.split(",") if f.strip()]
    if any(f in (Family.REAL_WORST, Family.REAL_THETA) for f in families):
        _require_real(Q)
    records = []
    for f in families:
        records.extend(sweep_family(Q, t, f, cfg))
    text = sweep_csv(records)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return 0


def cmd_mc_verify(args):
    Q = load_matrix(args.matrix)
    t = _triple(Q, args.eigenvalue_index)
    tag = StructureTag(args.structure)
    if tag is StructureTag.HAM_COMPLEX:
        t, _ = normalize_complex(t)
        kappa = float(kappa_ham_complex(t))
    elif tag is StructureTag.HAM_REAL:
        _require_real(Q)
        t, _ = normalize_real(t)
        kappa = kappa_ham_real(t).kappa
    else:
        raise InputError("mc-verify supports ham-complex and ham-real")
    best, _ = mc_oracle(t, tag, args.samples, args.seed, workers=args.workers)
    print(json.dumps({
        "structure": tag.value, "samples": args.samples, "seed": args.seed,
        "mc_max": best, "closed_form": kappa, "coverage": best / kappa,
        "dominated": bool(best <= kappa + 1e-10),
    }))
    return 0


def cmd_gen(args):
    Q = random_hamiltonian(args.n, args.seed, real=args.real)
    write_matrix(Q, args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="hamcond", description="Structured conditioning of Hamiltonian eigenvalues.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="condition numbers of every eigenvalue")
    a.add_argument("matrix")
    a.add_argument("--real-perturbations", action="store_true", help="require and report real Hamiltonian analysis")
    a.add_argument("--format", choices=["table", "csv"], default="table")
    a.add_argument("--tol", type=float, default=1e-8)
    a.set_defaults(func=cmd_analyze)

    structures = [t.value for t in StructureTag]

    pr = sub.add_parser("project", help="nearest structured matrix")
    pr.add_argument("matrix")
    pr.add_argument("--structure", choices=structures, required=True)
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_project)

    w = sub.add_parser("worst", help="worst-case structured perturbation")
    w.add_argument("matrix")
    w.add_argument("--eigenvalue-index", type=int, required=True)
    w.add_argument("--structure", choices=["ham-complex", "ham-real"], required=True)
    w.add_argument("--theta", type=float)
    w.add_argument("--out")
    w.set_defaults(func=cmd_worst)

    s = sub.add_parser("sweep", help="eps-perturbation sweeps as CSV")
    s.add_argument("matrix")
    s.add_argument("--eigenvalue-index", type=int, required=True)
    s.add_argument("--families", default="unstructured,complex-worst,real-worst,real-theta",
                   help="comma list of " + ",".join(f.value for f in Family))
    s.add_argument("--eps", type=float, default=1e-4)
    s.add_argument("--theta-steps", type=int, default=360)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("mc-verify", help="Monte-Carlo check of the closed-form maximum")
    m.add_argument("matrix")
    m.add_argument("--eigenvalue-index", type=int, required=True)
    m.add_argument("--structure", choices=["ham-complex", "ham-real"], required=True)
    m.add_argument("--samples", type=int, default=100_000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--workers", type=int, default=1)
    m.set_defaults(func=cmd_mc_verify)

    g = sub.add_parser("gen", help="random Hamiltonian test matrix")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--real", action="store_true")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except HamcondError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, InvalidDimension) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
