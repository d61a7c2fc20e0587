import numpy as np
import pytest

from blochspace import _kernels
from blochspace.sampling import random_mixed_states

numba = pytest.importorskip("numba")


@pytest.mark.parametrize("n", [2, 3, 5])
def test_numba_and_numpy_paths_agree(n):
    rhos = random_mixed_states(n, 64, seed=n)
    c_np = _kernels.power_sums_numpy(rhos, n + 1)
    c_nb = _kernels.power_sums_numba(rhos, n + 1)
    np.testing.assert_allclose(c_nb, c_np, rtol=0, atol=1e-14)
    np.testing.assert_allclose(_kernels.newton_numba(c_np, n), _kernels.newton_numpy(c_np, n), atol=1e-15)


def test_power_sums_match_eigenvalues():
    rhos = random_mixed_states(4, 10, seed=0)
    ev = np.linalg.eigvalsh(rhos)
    c = _kernels.power_sums(rhos, 4)
    for q in range(1, 5):
        np.testing.assert_allclose(c[:, q - 1], np.sum(ev**q, axis=1), atol=1e-14)


def test_flag_disables_numba(monkeypatch):
    monkeypatch.setattr(_kernels, "USE_NUMBA", False)
    rhos = random_mixed_states(3, 4, seed=1)
    np.testing.assert_allclose(_kernels.char_coefficients(rhos)[:, 1], 1.0)
