import numpy as np
import pytest

from tto import BlaschkeProduct, TMBasis

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_theta(rng, degree, radius=0.9, origin=False):
    r = radius * np.sqrt(rng.random(degree))
    zeros = r * np.exp(2j * np.pi * rng.random(degree))
    if origin:
        zeros[0] = 0
    return BlaschkeProduct(tuple(zeros), np.exp(2j * np.pi * rng.random()))


@pytest.fixture
def z3_basis():
    return TMBasis(BlaschkeProduct.monomial(3))


@pytest.fixture
def z2_basis():
    return TMBasis(BlaschkeProduct.monomial(2))
