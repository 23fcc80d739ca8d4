"""Unstructured and Hamiltonian-structured eigenvalue condition numbers.

For a simple eigenvalue with unit eigenvectors ``x``, ``y``:

* unstructured:       ``kappa = ||yx^*||_F / |y^*x| = 1 / |y^*x|``
* complex Hamiltonian: ``||(yx^*)|_HC||_F / |y^*x|``, once ``y^*Jx`` is real
* real Hamiltonian:   ``max(||Re(yx^*)|_H||_F, ||Im(yx^*)|_H||_F) / |y^*x|``,
  once the two projections are orthogonal.

Each structured value comes with the unit-norm perturbation attaining it.
"""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import DefectiveEigenvalue, HamcondError, NotNormalized, ZeroProjection
from .eigentriple import (
    DEFAULT_GAP_TOL,
    DEFAULT_RESIDUAL_TOL,
    assert_simple,
    eigen_decompose,
    normalize_complex,
    normalize_real,
    real_residual,
)
from .hamcore import (
    ZERO_NORM,
    StructureTag,
    as_matrix,
    frobenius_inner,
    frobenius_norm,
    project,
    symplectic_form,
)

CASE_TIE_TOL = 1e-8
NORMALIZATION_TOL = 1e-10
RANK_TOL = 1e-10


class CaseTag(str, Enum):
    XI_DOMINANT = "XiDominant"
    ETA_DOMINANT = "EtaDominant"
    CIRCULAR = "Circular"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class StructuredPerturbation:
    matrix: np.ndarray
    tag: StructureTag
    theta: Optional[float] = None
    attained_ratio: Optional[float] = None


@dataclass(frozen=True)
class ConditionReport:
    lam: complex
    y_star_x: complex
    y_star_Jx: complex
    xi_dot_J: float
    kappa: float
    kappa_ham_complex: float
    kappa_ham_real: Optional[float] = None
    D_xi: Optional[float] = None
    D_eta: Optional[float] = None
    case_tag: CaseTag = CaseTag.NOT_APPLICABLE


class RealConditioning(NamedTuple):
    kappa: float
    case_tag: CaseTag
    D_xi: float
    D_eta: float


def _abs_y_star_x(t):
    d = abs(t.y_star_x)
    if d <= ZERO_NORM:
        raise DefectiveEigenvalue(f"y^*x vanishes for eigenvalue {t.lam:.6g}")
    return d


def attained_ratio(t, E):
    """``|y^* E x| / |y^* x|``, computed directly from the vectors."""
    return float(abs(np.vdot(t.y, np.asarray(E) @ t.x)) / _abs_y_star_x(t))


def kappa_unstructured(t):
    return frobenius_norm(t.outer()) / _abs_y_star_x(t)


def kappa_ham_complex(t):
    """Complex Hamiltonian condition number of a complex-normalized triple.

    Evaluated both as the norm of the projected ``yx^*`` and through the
    closed form ``sqrt((1 + <Re(yx^*), J>^2) / 2)``; the two must agree.
    """
    g = t.y_star_Jx
    if abs(g.imag) > NORMALIZATION_TOL:
        raise NotNormalized(f"Im(y^*Jx) = {g.imag:.3e}; apply normalize_complex first")
    d = _abs_y_star_x(t)
    Z = t.outer()
    J = symplectic_form(Z.shape[0] // 2)
    proj_sq = frobenius_norm(project(Z, StructureTag.HAM_COMPLEX)) ** 2
    closed_sq = 0.5 * (1.0 + frobenius_inner(Z.real, J) ** 2)
    if abs(proj_sq - closed_sq) > NORMALIZATION_TOL:
        raise HamcondError(f"projection norm {proj_sq!r} disagrees with closed form {closed_sq!r}")
    return float(np.sqrt(proj_sq) / d)


def real_parts_projected(t):
    """Real Hamiltonian projections of ``Re(yx^*)`` and ``Im(yx^*)``."""
    Z = t.outer()
    return project(Z.real, StructureTag.HAM_REAL), project(Z.imag, StructureTag.HAM_REAL)


def classify_case(D_xi, D_eta, tau=CASE_TIE_TOL):
    if D_xi > D_eta * (1.0 + tau):
        return CaseTag.XI_DOMINANT
    if D_eta > D_xi * (1.0 + tau):
        return CaseTag.ETA_DOMINANT
    return CaseTag.CIRCULAR


def kappa_ham_real(t, tau=CASE_TIE_TOL):
    """Real Hamiltonian condition number of a real-normalized triple.

    ``D_xi = ||Re(yx^*) + J Re(yx^*)^T J||_F^2 / 2`` and likewise ``D_eta``,
    i.e. twice the squared norms of the two projections.
    """
    res = real_residual(t)
    if res > NORMALIZATION_TOL:
        raise NotNormalized(f"real normalization residual {res:.3e}; apply normalize_real first")
    d = _abs_y_star_x(t)
    a, b = real_parts_projected(t)
    D_xi = 2.0 * frobenius_norm(a) ** 2
    D_eta = 2.0 * frobenius_norm(b) ** 2
    kappa = np.sqrt(max(D_xi, D_eta) / 2.0) / d
    return RealConditioning(float(kappa), classify_case(D_xi, D_eta, tau), D_xi, D_eta)


def canonical_sign(E, rel_tol=1e-12):
    """Flip ``E`` so its first entry (row-major) with non-negligible real part is positive."""
    flat = np.asarray(E).ravel()
    re = np.real(flat)
    thr = rel_tol * max(np.abs(flat).max(initial=0.0), ZERO_NORM)
    idx = np.flatnonzero(np.abs(re) > thr)
    if idx.size and re[idx[0]] < 0:
        return -E
    return E


def _unit_perturbation(t, M, tag, theta=None):
    nrm = frobenius_norm(M)
    if nrm <= ZERO_NORM:
        raise ZeroProjection("selected structured direction vanishes")
    E = M / nrm
    return StructuredPerturbation(E, tag, theta, attained_ratio(t, E))


def _pm(t, p):
    minus = StructuredPerturbation(-p.matrix, p.tag, p.theta, attained_ratio(t, -p.matrix))
    return p, minus


def worst_perturbation_complex(t):
    """The two maximizers ``+-`` of ``|y^*Ex|`` over unit complex Hamiltonian ``E``.

    ``t`` must be complex-normalized; the first element follows
    :func:`canonical_sign`.
    """
    g = t.y_star_Jx
    if abs(g.imag) > NORMALIZATION_TOL:
        raise NotNormalized(f"Im(y^*Jx) = {g.imag:.3e}; apply normalize_complex first")
    P = project(t.outer(), StructureTag.HAM_COMPLEX)
    plus = _unit_perturbation(t, canonical_sign(P), StructureTag.HAM_COMPLEX)
    return _pm(t, plus)


@dataclass(frozen=True)
class RealWorst:
    """Maximizers over unit real Hamiltonian perturbations.

    In the dominant cases ``pair`` holds the two signed maximizers.  In the
    circular case every member of the one-parameter family is a maximizer;
    :meth:`member` evaluates it.
    """

    case_tag: CaseTag
    kappa: float
    pair: Optional[tuple]
    xi_part: np.ndarray
    eta_part: np.ndarray
    triple: object

    def member(self, theta):
        """``(Re|_H cos theta + Im|_H sin theta) / ||Re|_H||_F``.

        Exactly unit norm only in an exact tie; within the tie tolerance
        the norm deviates from one by at most about ``tau / 2``.
        """
        if self.case_tag is not CaseTag.CIRCULAR:
            raise ValueError(f"no maximizing family in case {self.case_tag.value}")
        nrm = frobenius_norm(self.xi_part)
        if nrm <= ZERO_NORM:
            raise ZeroProjection("projected real part vanishes")
        E = (self.xi_part * np.cos(theta) + self.eta_part * np.sin(theta)) / nrm
        return StructuredPerturbation(E, StructureTag.HAM_REAL, float(theta), attained_ratio(self.triple, E))

    def representatives(self):
        """Two maximizers for every case (``theta = 0, pi`` when circular)."""
        if self.pair is not None:
            return self.pair
        return self.member(0.0), self.member(np.pi)


def worst_perturbation_real(t, tau=CASE_TIE_TOL):
    rc = kappa_ham_real(t, tau)
    a, b = real_parts_projected(t)
    pair = None
    if rc.case_tag is CaseTag.XI_DOMINANT:
        pair = _pm(t, _unit_perturbation(t, canonical_sign(a), StructureTag.HAM_REAL))
    elif rc.case_tag is CaseTag.ETA_DOMINANT:
        pair = _pm(t, _unit_perturbation(t, canonical_sign(b), StructureTag.HAM_REAL))
    return RealWorst(rc.case_tag, rc.kappa, pair, a, b, t)


def e_theta(t, theta):
    """Unit real Hamiltonian direction mixing the projected real and imaginary parts.

    ``(Re|_H cos theta + Im|_H sin theta)`` normalized by its own norm;
    not a maximizer unless the case is circular or theta hits the dominant axis.
    """
    a, b = real_parts_projected(t)
    return _unit_perturbation(t, a * np.cos(theta) + b * np.sin(theta), StructureTag.HAM_REAL, float(theta))


class RankOneStructure(str, Enum):
    HAMILTONIAN = "Hamiltonian"
    SKEW_HAMILTONIAN = "SkewHamiltonian"
    NEITHER = "Neither"


@dataclass(frozen=True)
class RankOneReport:
    kind: RankOneStructure
    ham_residual: float
    skew_residual: float
    y_parallel_Jx: Optional[bool] = None
    re_lambda_zero: Optional[bool] = None


def detect_rank_one_structure(t, tol=1e-8):
    """Classify ``yx^*`` as Hamiltonian, skew-Hamiltonian or neither.

    When structured, also reports whether ``y`` is a unimodular multiple of
    ``Jx`` and whether the eigenvalue lies on the imaginary axis.
    """
    Z = t.outer()
    J = symplectic_form(Z.shape[0] // 2)
    ZJ = Z @ J
    rh = frobenius_norm(ZJ - ZJ.conj().T)
    rs = frobenius_norm(ZJ + ZJ.conj().T)
    if rh <= tol:
        kind = RankOneStructure.HAMILTONIAN
    elif rs <= tol:
        kind = RankOneStructure.SKEW_HAMILTONIAN
    else:
        return RankOneReport(RankOneStructure.NEITHER, rh, rs)
    parallel = 1.0 - abs(t.y_star_Jx) <= tol
    on_axis = abs(t.lam.real) <= tol * max(1.0, abs(t.lam))
    return RankOneReport(kind, rh, rs, parallel, on_axis)


def validate_bounds(r, slack=1e-10):
    """Check ``kappa/sqrt2 <= kappa_HC <= kappa`` and, when present, ``kappa_HC/sqrt2 <= kappa_H <= kappa_HC``."""
    s2 = np.sqrt(2.0)
    ok = r.kappa / s2 <= r.kappa_ham_complex + slack and r.kappa_ham_complex <= r.kappa + slack
    if r.kappa_ham_real is not None:
        ok = ok and (r.kappa_ham_complex / s2 <= r.kappa_ham_real + slack)
        ok = ok and (r.kappa_ham_real <= r.kappa_ham_complex + slack)
    return bool(ok)


def condition_report(t, real_perturbations=True, tau=CASE_TIE_TOL, branch="quarter"):
    """All condition numbers for one eigentriple.

    ``real_perturbations`` should be true only for real Hamiltonian matrices;
    otherwise the real fields stay empty and the case is ``NotApplicable``.
    """
    tc, _ = normalize_complex(t)
    Z = tc.outer()
    J = symplectic_form(Z.shape[0] // 2)
    kwargs = {}
    if real_perturbations:
        tr, _ = normalize_real(t, branch=branch)
        rc = kappa_ham_real(tr, tau)
        kwargs = dict(kappa_ham_real=rc.kappa, D_xi=rc.D_xi, D_eta=rc.D_eta, case_tag=rc.case_tag)
    return ConditionReport(
        lam=t.lam,
        y_star_x=tc.y_star_x,
        y_star_Jx=tc.y_star_Jx,
        xi_dot_J=frobenius_inner(Z.real, J),
        kappa=kappa_unstructured(t),
        kappa_ham_complex=float(kappa_ham_complex(tc)),
        **kwargs,
    )


def is_real_matrix(Q, tol=0.0):
    Q = np.asarray(Q)
    return not np.iscomplexobj(Q) or np.max(np.abs(Q.imag), initial=0.0) <= tol


def analyze(Q, real_perturbations=None, tol=DEFAULT_RESIDUAL_TOL, gap_tol=DEFAULT_GAP_TOL,
            tau=CASE_TIE_TOL, branch="quarter"):
    """Condition reports for every eigenvalue of ``Q`` in eigensolver order.

    ``real_perturbations=None`` enables the real analysis exactly when ``Q``
    has no imaginary part.
    """
    Q = as_matrix(Q)
    if real_perturbations is None:
        real_perturbations = is_real_matrix(Q)
    triples = eigen_decompose(Q, tol)
    q_norm = frobenius_norm(Q)
    reports = []
    for k, t in enumerate(triples):
        assert_simple(triples, k, gap_tol, q_norm)
        reports.append(condition_report(t, real_perturbations, tau, branch))
    return reports


def numerical_rank(E, rel_tol=RANK_TOL):
    s = np.linalg.svd(np.asarray(E), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))
