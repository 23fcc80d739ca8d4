import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hamcond.errors import InvalidDimension, StructureMismatch, ZeroProjection
from hamcond.hamcore import (
    StructureTag,
    as_matrix,
    check_structure,
    distance_to_structure,
    frobenius_inner,
    frobenius_norm,
    normalized_projection,
    project,
    project_blocks,
    random_hamiltonian,
    symplectic_form,
)

ALL_TAGS = list(StructureTag)
A2 = np.array([[1.0, 2.0], [3.0, 4.0]])
P2 = np.array([[-1.5, 2.0], [3.0, 1.5]])

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def square(draw, complex_=True, max_n=3):
    n = draw(st.integers(1, max_n))
    re = draw(arrays(float, (2 * n, 2 * n), elements=finite))
    if not complex_:
        return re
    im = draw(arrays(float, (2 * n, 2 * n), elements=finite))
    return re + 1j * im


def test_symplectic_form_n1():
    np.testing.assert_array_equal(symplectic_form(1), [[0, 1], [-1, 0]])


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_symplectic_identities(n):
    J = symplectic_form(n)
    np.testing.assert_array_equal(J @ J.T, np.eye(2 * n))
    np.testing.assert_array_equal(J @ J, -np.eye(2 * n))
    np.testing.assert_array_equal(J.T, -J)


@pytest.mark.parametrize("n", [0, -1, 1.5])
def test_symplectic_form_rejects(n):
    with pytest.raises(InvalidDimension):
        symplectic_form(n)


@pytest.mark.parametrize("bad", [np.ones((3, 3)), np.ones((2, 4)), np.zeros((0, 0)), np.array([[np.nan, 0], [0, 0]])])
def test_as_matrix_rejects(bad):
    with pytest.raises(InvalidDimension):
        as_matrix(bad)


def test_check_structure_examples(J1, ex41):
    assert check_structure(J1, "ham-real")
    assert check_structure(np.eye(2), "skewham-real")
    assert check_structure(ex41, "ham-real")
    assert check_structure(ex41, "ham-complex")
    assert not check_structure(ex41, "skewham-real")
    assert not check_structure(np.eye(2), "ham-complex")


def test_check_structure_real_tag_rejects_complex(J1):
    assert not check_structure(1j * J1, "ham-real")
    assert check_structure(1j * np.eye(2), "ham-complex")


def test_project_fixes_structured_points(ex41):
    np.testing.assert_allclose(project(ex41, "ham-complex"), ex41, atol=1e-15)


def test_project_identity_is_zero():
    np.testing.assert_array_equal(project(np.eye(2), "ham-complex"), np.zeros((2, 2)))


def test_project_2x2_example():
    np.testing.assert_allclose(project(A2, "ham-complex"), P2, atol=1e-15)
    np.testing.assert_allclose(project_blocks(A2), P2, atol=1e-15)


def test_project_real_tag_on_complex_raises():
    with pytest.raises(StructureMismatch):
        project(A2 + 1j, "ham-real")


@given(square())
def test_block_formula_matches_compact_formula(A):
    np.testing.assert_allclose(project(A, "ham-complex"), project_blocks(A), atol=1e-12)


@given(square(), st.sampled_from(ALL_TAGS))
def test_projection_output_is_structured_and_idempotent(A, tag):
    if tag.is_real:
        A = A.real
    P = project(A, tag)
    assert check_structure(P, tag, tol=1e-12)
    np.testing.assert_allclose(project(P, tag), P, atol=1e-14 * max(1, frobenius_norm(A)))


@given(square(complex_=False))
def test_real_splitting_is_orthogonal(B):
    H = project(B, "ham-real")
    W = project(B, "skewham-real")
    np.testing.assert_allclose(H + W, B, rtol=0, atol=4e-16 * max(1.0, np.abs(B).max()))
    lhs = frobenius_norm(B) ** 2
    assert abs(lhs - frobenius_norm(H) ** 2 - frobenius_norm(W) ** 2) <= 1e-12 * max(1.0, lhs)


@given(square())
def test_complex_projection_splits_into_real_parts(A):
    P = project(A, "ham-complex")
    Q = project(A.real, "ham-real") + 1j * project(A.imag, "skewham-real")
    np.testing.assert_allclose(P, Q, atol=1e-14 * max(1, frobenius_norm(A)))


@given(square(), square(), finite, finite, st.sampled_from([StructureTag.HAM_COMPLEX, StructureTag.SKEWHAM_COMPLEX]))
def test_projection_is_linear(A, B, alpha, beta, tag):
    if A.shape != B.shape:
        return
    lhs = project(alpha * A + beta * B, tag)
    rhs = alpha * project(A, tag) + beta * project(B, tag)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * max(1, frobenius_norm(A), frobenius_norm(B)) * 20)


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_projection_is_nearest(tag):
    rng = np.random.default_rng(7)
    n = 2
    A = rng.standard_normal((2 * n, 2 * n))
    if not tag.is_real:
        A = A + 1j * rng.standard_normal((2 * n, 2 * n))
    P = project(A, tag)
    best = frobenius_norm(A - P)
    for _ in range(1000):
        G = rng.standard_normal((2 * n, 2 * n))
        if not tag.is_real:
            G = G + 1j * rng.standard_normal((2 * n, 2 * n))
        Q = project(G, tag) * rng.uniform(0.01, 3.0)
        assert best < frobenius_norm(A - Q)
        # perturbing the optimum can only move away
        assert best <= frobenius_norm(A - (P + 1e-3 * Q / frobenius_norm(Q)))


def test_normalized_projection_examples():
    with pytest.raises(ZeroProjection):
        normalized_projection(np.eye(2))
    np.testing.assert_allclose(normalized_projection(A2), P2 / np.sqrt(17.5), atol=1e-15)


def test_normalized_projection_fixes_unit_hamiltonian():
    Q = random_hamiltonian(3, seed=1, real=False)
    Q = Q / frobenius_norm(Q)
    N = normalized_projection(Q)
    np.testing.assert_allclose(N, Q, atol=1e-15)


@given(square())
def test_normalized_projection_has_unit_norm(A):
    P = project(A, "ham-complex")
    if frobenius_norm(P) < 1e-6:
        return
    N = normalized_projection(A)
    assert abs(frobenius_norm(N) - 1.0) <= 1e-14
    assert check_structure(N, "ham-complex", tol=1e-12)


def test_frobenius_examples(J1):
    assert frobenius_norm(J1) == pytest.approx(np.sqrt(2), abs=1e-15)
    assert frobenius_inner(J1 / 2, J1) == pytest.approx(1.0, abs=1e-15)
    assert frobenius_norm(P2) == pytest.approx(np.sqrt(17.5), abs=1e-14)
    with pytest.raises(InvalidDimension):
        frobenius_inner(J1, np.eye(4))


def test_distance_examples(ex41):
    assert distance_to_structure(ex41, "ham-complex") == 0.0
    assert distance_to_structure(np.eye(2), "ham-complex") == pytest.approx(np.sqrt(2), abs=1e-15)
    assert distance_to_structure(A2, "ham-complex") == pytest.approx(2.5 * np.sqrt(2), abs=1e-14)


@pytest.mark.parametrize("real", [True, False])
@pytest.mark.parametrize("seed", range(5))
def test_random_hamiltonian_is_structured(real, seed):
    Q = random_hamiltonian(3, seed=seed, real=real)
    assert Q.shape == (6, 6)
    assert check_structure(Q, "ham-real" if real else "ham-complex", tol=1e-14)
    assert np.iscomplexobj(Q) != real
