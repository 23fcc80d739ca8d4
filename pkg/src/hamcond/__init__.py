"""Structured eigenvalue condition numbers of Hamiltonian matrices."""

from .conditioning import (
    CaseTag,
    ConditionReport,
    StructuredPerturbation,
    analyze,
    condition_report,
    detect_rank_one_structure,
    e_theta,
    kappa_ham_complex,
    kappa_ham_real,
    kappa_unstructured,
    validate_bounds,
    worst_perturbation_complex,
    worst_perturbation_real,
)
from .eigentriple import EigenTriple, eigen_decompose, normalize_complex, normalize_real
from .hamcore import (
    StructureTag,
    check_structure,
    distance_to_structure,
    normalized_projection,
    project,
    symplectic_form,
)

__version__ = "0.1.0"

__all__ = [
    "CaseTag",
    "ConditionReport",
    "EigenTriple",
    "StructureTag",
    "StructuredPerturbation",
    "analyze",
    "check_structure",
    "condition_report",
    "detect_rank_one_structure",
    "distance_to_structure",
    "e_theta",
    "eigen_decompose",
    "kappa_ham_complex",
    "kappa_ham_real",
    "kappa_unstructured",
    "normalize_complex",
    "normalize_real",
    "normalized_projection",
    "project",
    "symplectic_form",
    "validate_bounds",
    "worst_perturbation_complex",
    "worst_perturbation_real",
]
