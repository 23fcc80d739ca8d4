import numpy as np
import pytest

from hamcond.eigentriple import eigen_decompose


def example_matrix(h3_scale=1.0):
    H1 = np.array([[0.0, 2.0], [0.0, 0.0]])
    H2 = np.array([[-0.1, 0.1], [0.1, 0.1]])
    h = round(0.1 * h3_scale, 12)  # 0.1 * 0.1 is not the literal 0.01
    H3 = np.array([[0.0, h], [h, -h]])
    return np.block([[H1, H3], [H2, -H1.T]])


def first_quadrant(Q):
    """Eigentriple of the eigenvalue with positive real and imaginary parts."""
    for t in eigen_decompose(Q):
        if t.lam.real > 0 and t.lam.imag > 0:
            return t
    raise AssertionError("no first-quadrant eigenvalue")


def rotation_triple(lam=1j):
    """Q = J (n=1) at lam = +-i with x = y = (1, +-i)/sqrt2, built by hand."""
    from hamcond.eigentriple import EigenTriple

    x = np.array([1.0, lam.imag * 1j]) / np.sqrt(2)
    return EigenTriple(lam, x, x.copy(), 0.0, 0.0)


@pytest.fixture
def ex41():
    return example_matrix(1.0)


@pytest.fixture
def ex42():
    return example_matrix(0.1)


@pytest.fixture
def J1():
    return np.array([[0.0, 1.0], [-1.0, 0.0]])


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
