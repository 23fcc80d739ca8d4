"""Eigentriples of Hamiltonian matrices and the eigenvector phase normalizations.

Right eigenvectors come from ``Q x = lam x``; left eigenvectors from the
adjoint problem ``Q^* y = conj(lam) y`` so that ``y^* Q = lam y^*``.  Both
are scaled to unit 2-norm.  The structured condition numbers need the
relative phase of ``y`` and ``x`` fixed; only ``y`` is ever rotated here.
"""

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment

from .errors import DecompositionFailed, MatchingFailed, NotSimple
from .hamcore import as_matrix, frobenius_norm, symplectic_form

DEFAULT_RESIDUAL_TOL = 1e-8
DEFAULT_GAP_TOL = 1e-8
DEGENERATE_PAIRING = 1e-14


@dataclass(frozen=True)
class EigenTriple:
    lam: complex
    x: np.ndarray
    y: np.ndarray
    residual_right: float
    residual_left: float

    @property
    def y_star_x(self):
        return complex(np.vdot(self.y, self.x))

    @property
    def y_star_Jx(self):
        J = symplectic_form(self.x.shape[0] // 2)
        return complex(np.vdot(self.y, J @ self.x))

    def outer(self):
        """The rank-one matrix ``y x^*``."""
        return np.outer(self.y, self.x.conj())

    def rotated(self, phi):
        """Copy with ``y`` replaced by ``exp(i phi) y``."""
        return replace(self, y=np.exp(1j * phi) * self.y)


@dataclass(frozen=True)
class NormalizationCertificate:
    phase_applied: float
    kind: str  # "complex" or "real"
    residual: float


def _unit(v):
    nrm = np.linalg.norm(v)
    if not np.isfinite(nrm) or nrm == 0.0:
        raise DecompositionFailed("eigensolver returned a zero or non-finite eigenvector")
    return v / nrm


def eigen_decompose(Q, tol=DEFAULT_RESIDUAL_TOL):
    """All eigentriples of ``Q``, ordered as the eigensolver returns them.

    ``tol`` is relative to ``max(1, ||Q||_F)`` and bounds both residuals
    as well as the distance between matched left/right eigenvalues.
    """
    Q = as_matrix(Q)
    scale = max(1.0, frobenius_norm(Q))
    try:
        w, V = scipy.linalg.eig(Q)
        wl, W = scipy.linalg.eig(Q.conj().T)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise DecompositionFailed(str(exc)) from exc
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(wl))):
        raise DecompositionFailed("eigensolver produced non-finite eigenvalues")

    # adjoint eigenvalues are conj(lam); pair them up globally
    cost = np.abs(w[:, None] - wl.conj()[None, :])
    rows, cols = linear_sum_assignment(cost)
    match = np.empty_like(cols)
    match[rows] = cols
    worst = cost[rows, cols].max()
    if worst > tol * scale:
        raise MatchingFailed(f"left/right eigenvalue mismatch {worst:.3e}")

    triples = []
    for k, lam in enumerate(w):
        x = _unit(V[:, k])
        y = _unit(W[:, match[k]])
        rr = float(np.linalg.norm(Q @ x - lam * x))
        rl = float(np.linalg.norm(y.conj() @ Q - lam * y.conj()))
        if max(rr, rl) > tol * scale:
            raise DecompositionFailed(f"eigenpair residual {max(rr, rl):.3e} exceeds tolerance")
        triples.append(EigenTriple(complex(lam), x, y, rr, rl))
    return triples


def spectral_gap(triples, index):
    lam = triples[index].lam
    others = [abs(t.lam - lam) for j, t in enumerate(triples) if j != index]
    return min(others) if others else np.inf


def assert_simple(triples, index, gap_tol=DEFAULT_GAP_TOL, q_norm=1.0):
    """Raise :class:`NotSimple` unless eigenvalue ``index`` is separated from the rest.

    The threshold is ``gap_tol * max(1, q_norm)``.
    """
    if not 0 <= index < len(triples):
        raise IndexError(f"eigenvalue index {index} out of range")
    gap = spectral_gap(triples, index)
    if gap <= gap_tol * max(1.0, q_norm):
        raise NotSimple(f"eigenvalue {triples[index].lam:.6g} is not simple (gap {gap:.3e})", gap=gap)


def normalize_complex(t):
    """Rotate ``y`` so that ``y^* J x`` is real and nonnegative."""
    g = t.y_star_Jx
    if abs(g) <= DEGENERATE_PAIRING:
        return t, NormalizationCertificate(0.0, "complex", abs(g.imag))
    phi = float(np.angle(g))
    out = t.rotated(phi)
    return out, NormalizationCertificate(phi, "complex", abs(out.y_star_Jx.imag))


def real_residual(t):
    """Residual of ``Im(y^*Jx) Re(y^*Jx) = <Re(yx^*), Im(yx^*)>``."""
    Z = t.outer()
    g = t.y_star_Jx
    return abs(g.imag * g.real - float(np.sum(Z.real * Z.imag)))


def real_phase_roots(t):
    """The four rotations of ``y`` in ``[0, 2 pi)`` satisfying the real normalization.

    Rotating ``y`` by ``phi`` multiplies ``yx^*`` by ``exp(i phi)``; the
    Hamiltonian projections of its real and imaginary parts become
    orthogonal exactly when ``tan(2 phi) = num / den`` below.  Returns
    ``None`` when every phase works (both coefficients vanish).
    """
    Z = t.outer()
    xi, eta = Z.real, Z.imag
    g = t.y_star_Jx
    p, q = g.real, g.imag
    num = 2.0 * (float(np.sum(xi * eta)) - p * q)
    den = q * q - p * p - float(np.sum(xi * xi)) + float(np.sum(eta * eta))
    if abs(num) <= DEGENERATE_PAIRING and abs(den) <= DEGENERATE_PAIRING:
        return None
    phi0 = (0.5 * np.arctan2(num, den)) % (np.pi / 2)
    return [float(phi0 + k * np.pi / 2) for k in range(4)]


def normalize_real(t, branch="quarter"):
    """Rotate ``y`` so the real-case normalization holds.

    The root is picked relative to the complex-normalized pair.
    ``branch="minimal"`` takes the root of smallest magnitude, which leaves
    real eigenvectors untouched.  ``branch="quarter"`` (default) takes the
    root nearest a quarter turn, i.e. the minimal root followed by
    ``y -> i y``; this swaps the roles of ``Re(yx^*)`` and ``Im(yx^*)``
    and matches the labelling used for the worked examples in the
    literature.  The condition numbers do not depend on the branch.
    """
    if branch not in ("minimal", "quarter"):
        raise ValueError(f"unknown branch {branch!r}")
    base, cert = normalize_complex(t)
    roots = real_phase_roots(base)
    if roots is None:
        phi = 0.0
    else:
        # roots are phi0 + k pi/2 with phi0 in [0, pi/2); pick the one in (-pi/4, pi/4]
        phi = roots[0] if roots[0] <= np.pi / 4 else roots[0] - np.pi / 2
    if branch == "quarter":
        phi += np.pi / 2
    out = base.rotated(phi)
    total = float(np.angle(np.exp(1j * (cert.phase_applied + phi))))
    return out, NormalizationCertificate(total, "real", real_residual(out))


def spectral_symmetry_check(triples, real_flag, tol=1e-8):
    """Check the eigenvalue symmetries of a Hamiltonian spectrum.

    Real matrices: ``-lam``, ``conj(lam)`` and ``-conj(lam)`` all occur.
    Complex matrices: ``-conj(lam)`` occurs.  Returns ``(ok, worst)`` where
    ``worst`` is the largest distance from a required partner to the spectrum.
    """
    spectrum = np.array([t.lam for t in triples])
    maps = [lambda z: -np.conj(z)]
    if real_flag:
        maps += [lambda z: -z, np.conj]
    worst = 0.0
    for f in maps:
        partners = f(spectrum)
        d = np.abs(partners[:, None] - spectrum[None, :]).min(axis=1)
        worst = max(worst, float(d.max()))
    return worst <= tol, worst
