"""Seeded random states and Bloch vectors."""
from __future__ import annotations

import numpy as np

from .generators import GeneratorBasis, build_generator_basis
from .statemap import ball_radius, matrix_to_bloch, pure_state

KINDS = ("pure", "mixed", "ball-uniform")


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_kets(n, count, seed=0):
    rng = _rng(seed)
    psi = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return psi / np.linalg.norm(psi, axis=1, keepdims=True)


def random_pure_states(n, count, seed=0):
    return pure_state(random_kets(n, count, seed))


def random_mixed_states(n, count, seed=0):
    """Hilbert-Schmidt measure: ``G G^dagger / tr(G G^dagger)`` with Ginibre G."""
    rng = _rng(seed)
    g = rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))
    rho = g @ np.conj(np.swapaxes(g, 1, 2))
    rho /= np.trace(rho, axis1=1, axis2=2).real[:, None, None]
    # exact Hermitian symmetrisation removes matmul rounding asymmetry
    return 0.5 * (rho + np.conj(np.swapaxes(rho, 1, 2)))


def random_ball_vectors(n, count, seed=0):
    """Uniform samples from the ball of radius sqrt(2(N-1)/N) in R^(N^2-1)."""
    rng = _rng(seed)
    d = n * n - 1
    x = rng.standard_normal((count, d))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    r = ball_radius(n) * rng.random(count) ** (1.0 / d)
    return x * r[:, None]


def sample_states(n: int, count: int, kind: str = "mixed", seed=0, basis: GeneratorBasis | None = None):
    """Bloch vectors of ``count`` random states, shape (count, N^2-1).

    ``pure`` and ``mixed`` are valid states; ``ball-uniform`` fills the
    enclosing ball and so includes non-states when N >= 3.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    basis = basis or build_generator_basis(n)
    if kind == "pure":
        return matrix_to_bloch(random_pure_states(n, count, seed), basis)
    if kind == "mixed":
        return matrix_to_bloch(random_mixed_states(n, count, seed), basis)
    if kind == "ball-uniform":
        return random_ball_vectors(n, count, seed)
    raise ValueError(f"unknown sample kind {kind!r}; expected one of {KINDS}")
