"""Bloch vector <-> density matrix maps and scalar state functionals.

Vectors and matrices are plain numpy arrays.  Every map accepts a single item
or a stack along the leading axes (``(..., N^2-1)`` vectors, ``(..., N, N)``
matrices).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidMatrix
from .generators import GeneratorBasis

IMAG_TOL = 1e-12


def level_count(dim: int) -> int:
    """Recover N from a Bloch-vector length ``N^2 - 1``."""
    n = int(round(np.sqrt(dim + 1)))
    if n < 2 or n * n - 1 != dim:
        raise DimensionMismatch(f"length {dim} is not N^2-1 for any N >= 2")
    return n


def as_bloch_vector(v, n: int | None = None) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    if v.ndim == 0:
        raise DimensionMismatch("Bloch vector must be at least 1-dimensional")
    found = level_count(v.shape[-1])
    if n is not None and found != n:
        raise DimensionMismatch(f"Bloch vector has length {v.shape[-1]}, expected {n * n - 1} for N={n}")
    return v


def check_density_candidate(rho, tol=1e-12) -> np.ndarray:
    """Validate unit trace and Hermiticity; positivity is not checked."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim < 2 or rho.shape[-1] != rho.shape[-2]:
        raise DimensionMismatch(f"density matrix must be square, got shape {rho.shape}")
    if rho.shape[-1] < 2:
        raise DimensionMismatch("density matrix must be at least 2x2")
    if rho.size and np.max(np.abs(rho - np.conj(np.swapaxes(rho, -1, -2)))) > tol:
        raise InvalidMatrix("matrix is not Hermitian (rho != rho^dagger)")
    if rho.size and np.max(np.abs(np.trace(rho, axis1=-2, axis2=-1) - 1.0)) > tol:
        raise InvalidMatrix("matrix does not have unit trace")
    return rho


def bloch_to_matrix(v, basis: GeneratorBasis) -> np.ndarray:
    """``rho = I/N + (1/2) sum_i v_i M_i``; unit-trace Hermitian for any real v."""
    v = as_bloch_vector(v, basis.n)
    return np.eye(basis.n) / basis.n + 0.5 * np.einsum("...i,ijk->...jk", v, basis.matrices)


def matrix_to_bloch(rho, basis: GeneratorBasis) -> np.ndarray:
    """Components ``tr(rho M_i)``; rejects inputs whose traces are not real."""
    rho = check_density_candidate(rho)
    if rho.shape[-1] != basis.n:
        raise DimensionMismatch(f"matrix is {rho.shape[-1]}x{rho.shape[-1]}, basis has N={basis.n}")
    comps = np.einsum("...jk,ikj->...i", rho, basis.matrices)
    if comps.size and np.max(np.abs(comps.imag)) >= IMAG_TOL:
        raise InvalidMatrix("tr(rho M_i) has an imaginary part; input is not Hermitian")
    return comps.real.copy()


def purity(v, n: int | None = None) -> np.ndarray | float:
    """``tr rho^2 = 1/N + |v|^2 / 2``."""
    v = as_bloch_vector(v, n)
    n = level_count(v.shape[-1])
    return 1.0 / n + 0.5 * np.sum(v * v, axis=-1)


def ball_radius(n: int) -> float:
    if n < 2:
        raise DimensionMismatch(f"level count must be >= 2, got {n}")
    return float(np.sqrt(2.0 * (n - 1) / n))


@dataclass(frozen=True)
class Observable:
    """``a I + sum_i b_i M_i``."""

    n: int
    a: float
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "b", as_bloch_vector(self.b, self.n))

    def matrix(self, basis: GeneratorBasis) -> np.ndarray:
        return self.a * np.eye(self.n) + np.einsum("i,ijk->jk", self.b, basis.matrices)


def expectation(v, o: Observable):
    v = as_bloch_vector(v, o.n)
    return o.a + v @ o.b


def overlap(v1, v2):
    """``tr(rho_1 rho_2) = 1/N + v1.v2 / 2``."""
    v1 = as_bloch_vector(v1)
    v2 = as_bloch_vector(v2)
    if v1.shape[-1] != v2.shape[-1]:
        raise DimensionMismatch("Bloch vectors belong to different level counts")
    return 1.0 / level_count(v1.shape[-1]) + 0.5 * np.sum(v1 * v2, axis=-1)


def pure_state(psi) -> np.ndarray:
    """Projector ``|psi><psi|`` of a normalised copy of ``psi``."""
    psi = np.asarray(psi, dtype=np.complex128)
    psi = psi / np.linalg.norm(psi, axis=-1, keepdims=True)
    return psi[..., :, None] * np.conj(psi[..., None, :])
