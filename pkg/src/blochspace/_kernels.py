"""Hot loops for batched characteristic-coefficient evaluation.

Two interchangeable paths are provided: numba ``@njit`` kernels and a pure
numpy fallback.  The numba path is used when numba imports cleanly and the
environment variable ``BLOCH_NUMBA`` is not set to ``0``.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("BLOCH_NUMBA", "1") != "0"


def power_sums_numpy(rhos, qmax):
    """Return ``C[b, q-1] = Re tr(rhos[b]^q)`` for ``q = 1..qmax``.

    Powers are built by repeated multiplication; no eigenvalues involved.
    """
    rhos = np.asarray(rhos, dtype=np.complex128)
    out = np.empty((rhos.shape[0], qmax))
    power = rhos.copy()
    out[:, 0] = np.einsum("bii->b", power).real
    for q in range(1, qmax):
        power = power @ rhos
        out[:, q] = np.einsum("bii->b", power).real
    return out


def newton_numpy(csums, n):
    """Newton recursion ``k a_k = sum_q (-1)^(q-1) C_q a_(k-q)``, batched."""
    csums = np.asarray(csums, dtype=np.float64)
    a = np.zeros((csums.shape[0], n + 1))
    a[:, 0] = 1.0
    for k in range(1, n + 1):
        acc = np.zeros(csums.shape[0])
        sign = 1.0
        for q in range(1, k + 1):
            acc += sign * csums[:, q - 1] * a[:, k - q]
            sign = -sign
        a[:, k] = acc / k
    return a


def _power_sums_numba_py(rhos, qmax):
    nb, n = rhos.shape[0], rhos.shape[1]
    out = np.empty((nb, qmax))
    power = np.empty((n, n), dtype=np.complex128)
    nxt = np.empty((n, n), dtype=np.complex128)
    for b in range(nb):
        rho = rhos[b]
        tr = 0.0
        for i in range(n):
            tr += rho[i, i].real
            for j in range(n):
                power[i, j] = rho[i, j]
        out[b, 0] = tr
        for q in range(1, qmax):
            for i in range(n):
                for j in range(n):
                    s = 0j
                    for m in range(n):
                        s += power[i, m] * rho[m, j]
                    nxt[i, j] = s
            tr = 0.0
            for i in range(n):
                tr += nxt[i, i].real
                for j in range(n):
                    power[i, j] = nxt[i, j]
            out[b, q] = tr
    return out


def _newton_numba_py(csums, n):
    nb = csums.shape[0]
    a = np.zeros((nb, n + 1))
    for b in range(nb):
        a[b, 0] = 1.0
        for k in range(1, n + 1):
            acc = 0.0
            sign = 1.0
            for q in range(1, k + 1):
                acc += sign * csums[b, q - 1] * a[b, k - q]
                sign = -sign
            a[b, k] = acc / k
    return a


if numba is not None:
    power_sums_numba = numba.njit(cache=True, nogil=True)(_power_sums_numba_py)
    newton_numba = numba.njit(cache=True, nogil=True)(_newton_numba_py)
else:  # pragma: no cover
    power_sums_numba = _power_sums_numba_py
    newton_numba = _newton_numba_py


def power_sums(rhos, qmax):
    rhos = np.ascontiguousarray(rhos, dtype=np.complex128)
    if USE_NUMBA:
        return power_sums_numba(rhos, int(qmax))
    return power_sums_numpy(rhos, int(qmax))


def newton(csums, n):
    csums = np.ascontiguousarray(csums, dtype=np.float64)
    if USE_NUMBA:
        return newton_numba(csums, int(n))
    return newton_numpy(csums, int(n))


def char_coefficients(rhos):
    """Coefficients ``a_0..a_N`` of ``det(x I - rho)`` (alternating-sign
    convention) for a stack of ``N x N`` matrices."""
    n = rhos.shape[-1]
    return newton(power_sums(rhos, n), n)
