"""Empirical checks of the first-order predictions.

Finite-difference derivatives along a direction, eps-sweeps that trace the
response circles/ellipses of an eigenvalue, and a Monte-Carlo estimate of
the structured maximum.  Everything random is driven by an explicit seed.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg

from .conditioning import (
    CaseTag,
    StructuredPerturbation,
    attained_ratio,
    e_theta,
    kappa_ham_real,
    kappa_unstructured,
    worst_perturbation_complex,
    worst_perturbation_real,
)
from .eigentriple import normalize_complex, normalize_real
from .errors import DecompositionFailed, InvalidDimension, MatchingFailed, ZeroProjection
from .hamcore import ZERO_NORM, StructureTag, as_matrix, frobenius_norm, project, symplectic_form

MAX_RESAMPLES = 8
MC_CHUNK = 10_000


class Family(str, Enum):
    UNSTRUCTURED_CIRCLE = "unstructured"
    COMPLEX_WORST = "complex-worst"
    REAL_WORST = "real-worst"
    REAL_THETA = "real-theta"
    RANDOM_STRUCTURED = "random"


@dataclass(frozen=True)
class SweepConfig:
    eps: float = 1e-4
    theta_steps: int = 360
    samples: int = 100
    seed: int = 0
    fd_steps: tuple = (1e-4, 1e-5, 1e-6)
    random_tag: Optional[StructureTag] = None

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.theta_steps < 4:
            raise ValueError("theta_steps must be at least 4")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.seed < 0 or self.seed >= 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        steps = tuple(float(s) for s in self.fd_steps)
        if any(s <= 0 for s in steps) or len(set(steps)) != len(steps):
            raise ValueError("fd_steps must be distinct and positive")
        object.__setattr__(self, "fd_steps", steps)

    def theta_grid(self):
        return 2 * np.pi * np.arange(self.theta_steps) / self.theta_steps


@dataclass(frozen=True)
class SweepRecord:
    family: Family
    parameter: float
    perturbed_lambda: complex
    displacement: complex
    predicted: float


# -- sampling -----------------------------------------------------------------


def _gaussian(rng, shape, tag):
    G = rng.standard_normal(shape)
    if not tag.is_real:
        G = G + 1j * rng.standard_normal(shape)
    return G


def _project_batch(G, tag):
    J = symplectic_form(G.shape[-1] // 2)
    sign = 1.0 if tag.is_hamiltonian else -1.0
    Gt = np.swapaxes(G, -1, -2)
    if not tag.is_real:
        Gt = Gt.conj()
    return 0.5 * (G + sign * (J @ Gt @ J))


def random_unit_structured(n, tag, seed):
    """Gaussian matrix projected onto ``tag`` and scaled to unit Frobenius norm."""
    if int(n) != n or n < 1:
        raise InvalidDimension(f"half-dimension must be a positive integer, got {n!r}")
    tag = StructureTag(tag)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RESAMPLES):
        P = project(_gaussian(rng, (2 * n, 2 * n), tag), tag)
        nrm = frobenius_norm(P)
        if nrm > ZERO_NORM:
            return StructuredPerturbation(P / nrm, tag)
    raise ZeroProjection(f"{MAX_RESAMPLES} consecutive draws projected to zero")


def random_unit_structured_batch(n, tag, count, rng):
    """``count`` independent unit structured directions as a ``(count, 2n, 2n)`` array."""
    tag = StructureTag(tag)
    P = _project_batch(_gaussian(rng, (count, 2 * n, 2 * n), tag), tag)
    nrm = np.linalg.norm(P, axis=(1, 2))
    # a zero projection has probability zero; guard anyway
    bad = nrm <= ZERO_NORM
    if np.any(bad):
        for i in np.flatnonzero(bad):
            P[i] = random_unit_structured(n, tag, rng.integers(2**63)).matrix
            nrm[i] = 1.0
    return P / nrm[:, None, None]


def _mc_chunk(t, tag, count, seed_seq):
    rng = np.random.default_rng(seed_seq)
    n = t.x.shape[0] // 2
    G = random_unit_structured_batch(n, tag, count, rng)
    vals = np.abs(np.einsum("i,kij,j->k", t.y.conj(), G, t.x))
    k = int(np.argmax(vals))
    return float(vals[k]), G[k]


def mc_oracle(t, tag, samples, seed, workers=1):
    """Largest ``|y^*Gx| / |y^*x|`` over ``samples`` random unit structured ``G``.

    Samples are split into fixed chunks, each with its own child of
    ``SeedSequence(seed)``, so the result does not depend on ``workers``.
    Returns ``(max_ratio, argmax_direction)``.
    """
    tag = StructureTag(tag)
    sizes = [MC_CHUNK] * (samples // MC_CHUNK)
    if samples % MC_CHUNK:
        sizes.append(samples % MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, children))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda job: _mc_chunk(t, tag, *job), jobs))
    else:
        results = [_mc_chunk(t, tag, *job) for job in jobs]
    best, G = max(results, key=lambda r: r[0])
    d = abs(t.y_star_x)
    return best / d, StructuredPerturbation(G, tag, attained_ratio=best / d)


# -- eigenvalue tracking ------------------------------------------------------


class Nearest(NamedTuple):
    index: int
    distance: float
    ambiguous: bool


def nearest_eigenvalue(spectrum, target):
    """Index of the eigenvalue closest to ``target``.

    ``ambiguous`` is set when the runner-up lies within twice the nearest distance.
    """
    w = np.asarray(spectrum, dtype=complex)
    if w.size == 0:
        raise ValueError("empty spectrum")
    d = np.abs(w - target)
    order = np.argsort(d, kind="stable")
    k = int(order[0])
    ambiguous = w.size > 1 and d[order[1]] <= 2.0 * d[k]
    return Nearest(k, float(d[k]), bool(ambiguous))


def track_eigenvalue(Q, lam):
    """Eigenvalue of ``Q`` continuing ``lam``; :class:`MatchingFailed` if ambiguous."""
    try:
        w = scipy.linalg.eigvals(Q)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise DecompositionFailed(str(exc)) from exc
    hit = nearest_eigenvalue(w, lam)
    if hit.ambiguous:
        raise MatchingFailed(f"cannot track eigenvalue {lam:.6g}: two candidates at comparable distance")
    return complex(w[hit.index])


@dataclass
class FDResult:
    estimate: float
    steps: list
    quotients: list  # complex difference quotients (lam(t) - lam) / t
    richardson: list = field(default_factory=list)

    @property
    def magnitudes(self):
        return [abs(q) for q in self.quotients]


def fd_derivative(Q, E, lam, steps=(1e-4, 1e-5, 1e-6)):
    """Finite-difference estimate of ``|d lam / dt|`` along ``Q + tE`` at ``t = 0``.

    Steps are processed largest first; ``estimate`` is the magnitude at the
    smallest step.  Richardson extrapolates between consecutive steps are
    reported for inspection only.
    """
    Q = as_matrix(Q)
    E = E.matrix if isinstance(E, StructuredPerturbation) else np.asarray(E)
    steps = sorted((float(s) for s in steps), reverse=True)
    quotients = [(track_eigenvalue(Q + h * E, lam) - lam) / h for h in steps]
    rich = [
        abs((h1 * q2 - h2 * q1) / (h1 - h2))
        for (h1, q1), (h2, q2) in zip(zip(steps, quotients), zip(steps[1:], quotients[1:]))
    ]
    return FDResult(abs(quotients[-1]), steps, quotients, rich)


# -- sweeps -------------------------------------------------------------------


def _records(Q, lam, family, params, directions, eps, t):
    out = []
    for p, E in zip(params, directions):
        mu = track_eigenvalue(Q + eps * E, lam)
        out.append(SweepRecord(family, float(p), mu, mu - lam, attained_ratio(t, E) * eps))
    return out


def sweep_family(Q, triple, family, config=SweepConfig()):
    """Perturb ``Q`` by ``eps * E`` for each direction of ``family`` and record where ``lam`` goes.

    ``predicted`` is the first-order displacement ``eps |y^*Ex| / |y^*x|`` of
    the direction actually used.  The triple is normalized here as needed.
    """
    Q = as_matrix(Q)
    family = Family(family)
    lam, eps = triple.lam, config.eps
    thetas = config.theta_grid()

    if family is Family.UNSTRUCTURED_CIRCLE:
        Z = triple.outer()
        dirs = [np.exp(1j * th) * Z for th in thetas]
        return _records(Q, lam, family, thetas, dirs, eps, triple)

    if family is Family.COMPLEX_WORST:
        tc, _ = normalize_complex(triple)
        pair = worst_perturbation_complex(tc)
        return _records(Q, lam, family, [0, 1], [p.matrix for p in pair], eps, tc)

    if family is Family.REAL_WORST:
        tr, _ = normalize_real(triple)
        worst = worst_perturbation_real(tr)
        if worst.case_tag is CaseTag.CIRCULAR:
            dirs = [worst.member(th).matrix for th in thetas]
            return _records(Q, lam, family, thetas, dirs, eps, tr)
        return _records(Q, lam, family, [0, 1], [p.matrix for p in worst.pair], eps, tr)

    if family is Family.REAL_THETA:
        tr, _ = normalize_real(triple)
        dirs = [e_theta(tr, th).matrix for th in thetas]
        return _records(Q, lam, family, thetas, dirs, eps, tr)

    tag = config.random_tag
    if tag is None:
        tag = StructureTag.HAM_REAL if not np.iscomplexobj(Q) else StructureTag.HAM_COMPLEX
    rng = np.random.default_rng(config.seed)
    n = Q.shape[0] // 2
    dirs = random_unit_structured_batch(n, tag, config.samples, rng)
    return _records(Q, lam, family, range(config.samples), dirs, eps, triple)


def predicted_radius(triple, family):
    """First-order displacement per unit eps that a worst-case family should trace."""
    family = Family(family)
    if family is Family.UNSTRUCTURED_CIRCLE:
        return kappa_unstructured(triple)
    if family is Family.COMPLEX_WORST:
        tc, _ = normalize_complex(triple)
        return worst_perturbation_complex(tc)[0].attained_ratio
    if family in (Family.REAL_WORST, Family.REAL_THETA):
        tr, _ = normalize_real(triple)
        return kappa_ham_real(tr).kappa
    raise ValueError("random directions have no single predicted radius")
