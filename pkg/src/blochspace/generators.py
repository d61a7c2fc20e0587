"""Orthogonal generators of SU(N) and their structure constants.

The basis is the generalized Gell-Mann construction.  For each ``k = 2..N``
the symmetric ``u_jk`` and antisymmetric ``v_jk`` off-diagonal generators are
emitted for ``j = 1..k-1``, followed by the diagonal ``w_(k-1)``.  For N=2 this
gives the Pauli matrices and for N=3 the usual Gell-Mann ordering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix

DROP_TOL = 1e-12


@dataclass(frozen=True)
class GeneratorBasis:
    n: int
    matrices: np.ndarray  # shape (N^2-1, N, N), complex

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=np.complex128)
        mats.setflags(write=False)
        object.__setattr__(self, "matrices", mats)
        if mats.shape != (self.n * self.n - 1, self.n, self.n):
            raise DimensionMismatch(
                f"expected {self.n * self.n - 1} matrices of size {self.n}x{self.n}, got shape {mats.shape}"
            )

    @property
    def dim(self) -> int:
        return self.n * self.n - 1

    def __len__(self):
        return self.dim

    def __getitem__(self, i):
        return self.matrices[i]

    def gram(self) -> np.ndarray:
        """Matrix of trace inner products ``tr(M_i M_j)``."""
        return np.einsum("aij,bji->ab", self.matrices, self.matrices)

    def check(self, herm_tol=1e-14, trace_tol=1e-14, ortho_tol=1e-12):
        """Raise :class:`InvalidMatrix` if any generator invariant fails."""
        m = self.matrices
        if np.max(np.abs(m - np.conj(np.swapaxes(m, 1, 2))), initial=0.0) > herm_tol:
            raise InvalidMatrix("generator basis is not Hermitian")
        if np.max(np.abs(np.einsum("aii->a", m)), initial=0.0) > trace_tol:
            raise InvalidMatrix("generator basis is not traceless")
        if np.max(np.abs(self.gram() - 2 * np.eye(self.dim))) > ortho_tol:
            raise InvalidMatrix("generator basis violates tr(M_i M_j) = 2 delta_ij")


def _u(n, j, k):
    m = np.zeros((n, n), dtype=np.complex128)
    m[j, k] = m[k, j] = 1.0
    return m


def _v(n, j, k):
    m = np.zeros((n, n), dtype=np.complex128)
    m[j, k] = -1j
    m[k, j] = 1j
    return m


def _w(n, l):
    # sqrt(2/(l(l+1))) * (sum_{j<=l} |j><j| - l |l+1><l+1|), 1-based l
    m = np.zeros((n, n), dtype=np.complex128)
    m[np.arange(l), np.arange(l)] = 1.0
    m[l, l] = -l
    return np.sqrt(2.0 / (l * (l + 1))) * m


def generator_labels(n: int) -> list[str]:
    """Human-readable labels (``u12``, ``v12``, ``w1``, ...) in basis order."""
    labels = []
    for k in range(2, n + 1):
        for j in range(1, k):
            labels += [f"u{j}{k}", f"v{j}{k}"]
        labels.append(f"w{k - 1}")
    return labels


@lru_cache(maxsize=None)
def _build(n):
    mats = []
    for k in range(1, n):
        for j in range(k):
            mats.append(_u(n, j, k))
            mats.append(_v(n, j, k))
        mats.append(_w(n, k))
    return GeneratorBasis(n, np.array(mats))


def build_generator_basis(n: int) -> GeneratorBasis:
    """Generalized Gell-Mann basis for N levels, in canonical order."""
    if int(n) != n or n < 2:
        raise DimensionMismatch(f"level count must be an integer >= 2, got {n!r}")
    return _build(int(n))


def _canonical(i, j, k):
    """Sort an index triple; return it with the permutation parity (+1/-1)."""
    t = [i, j, k]
    sign = 1
    for a in range(2):
        for b in range(2 - a):
            if t[b] > t[b + 1]:
                t[b], t[b + 1] = t[b + 1], t[b]
                sign = -sign
    return tuple(t), sign


@dataclass(frozen=True)
class StructureConstants:
    """Sparse f (antisymmetric) and g (symmetric) tensors of su(N).

    Keys are 1-based canonical triples ``i <= j <= k``.  Lookups through
    :meth:`f_at` / :meth:`g_at` accept any index order.
    """

    n: int
    f: dict = field(default_factory=dict)
    g: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.n * self.n - 1

    def f_at(self, i, j, k) -> float:
        key, sign = _canonical(i, j, k)
        return sign * self.f.get(key, 0.0)

    def g_at(self, i, j, k) -> float:
        key, _ = _canonical(i, j, k)
        return self.g.get(key, 0.0)

    def _dense(self, table, antisym):
        d = self.dim
        out = np.zeros((d, d, d))
        for (i, j, k), val in table.items():
            for perm in set(permutations((i - 1, j - 1, k - 1))):
                if antisym:
                    _, s = _canonical(*perm)
                    out[perm] = s * val
                else:
                    out[perm] = val
        return out

    @cached_property
    def _dense_f(self):
        out = self._dense(self.f, antisym=True)
        out.setflags(write=False)
        return out

    @cached_property
    def _dense_g(self):
        out = self._dense(self.g, antisym=False)
        out.setflags(write=False)
        return out

    def dense_f(self) -> np.ndarray:
        """Full (read-only) f tensor, 0-based indices."""
        return self._dense_f

    def dense_g(self) -> np.ndarray:
        return self._dense_g

    def triples(self):
        """Sorted canonical triples ``(i, j, k, f, g)`` with any nonzero entry."""
        keys = sorted(set(self.f) | set(self.g))
        return [(i, j, k, self.f.get((i, j, k), 0.0), self.g.get((i, j, k), 0.0)) for i, j, k in keys]


def _triple_traces(mats):
    # T[a,b,c] = tr(M_a M_b M_c)
    return np.einsum("aij,bjk,cki->abc", mats, mats, mats, optimize=True)


def compute_structure_constants(basis: GeneratorBasis) -> StructureConstants:
    """f_ijk = tr([M_i, M_j] M_k) / 4i and g_ijk = tr({M_i, M_j} M_k) / 4."""
    basis.check()
    t = _triple_traces(basis.matrices)
    tt = np.swapaxes(t, 0, 1)
    f_dense = ((t - tt) / 4j).real
    g_dense = ((t + tt) / 4).real
    d = basis.dim
    f, g = {}, {}
    for i in range(d):
        for j in range(i, d):
            for k in range(j, d):
                key = (i + 1, j + 1, k + 1)
                if abs(f_dense[i, j, k]) > DROP_TOL:
                    f[key] = float(f_dense[i, j, k])
                if abs(g_dense[i, j, k]) > DROP_TOL:
                    g[key] = float(g_dense[i, j, k])
    return StructureConstants(basis.n, f, g)


@lru_cache(maxsize=None)
def structure_constants(n: int) -> StructureConstants:
    """Cached structure constants of the canonical basis."""
    return compute_structure_constants(build_generator_basis(n))


def check_orthogonal(v, tol=1e-12) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DimensionMismatch(f"orthogonal matrix must be square, got shape {v.shape}")
    if np.max(np.abs(v.T @ v - np.eye(v.shape[0]))) > tol:
        raise InvalidMatrix("matrix is not orthogonal (V^T V != I)")
    return v


def rotate_basis(basis: GeneratorBasis, v) -> GeneratorBasis:
    """New basis ``M'_i = sum_j V_ij M_j`` for an orthogonal ``V``."""
    v = check_orthogonal(v)
    if v.shape[0] != basis.dim:
        raise DimensionMismatch(f"rotation has dim {v.shape[0]}, basis has {basis.dim} generators")
    return GeneratorBasis(basis.n, np.einsum("ij,jab->iab", v, basis.matrices))


def transform_tensor(t, v) -> np.ndarray:
    """``t'_ijk = V_il V_jm V_kn t_lmn`` for a dense rank-3 tensor."""
    return np.einsum("il,jm,kn,lmn->ijk", v, v, v, t, optimize=True)
