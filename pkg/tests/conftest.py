import numpy as np
import pytest

from blochspace.generators import build_generator_basis


@pytest.fixture(scope="session")
def bases():
    return {n: build_generator_basis(n) for n in range(2, 7)}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_orthogonal(d, rng):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))
