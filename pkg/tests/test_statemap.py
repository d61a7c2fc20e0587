import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from blochspace.errors import DimensionMismatch, InvalidMatrix
from blochspace.generators import build_generator_basis
from blochspace.sampling import random_kets, random_pure_states, sample_states
from blochspace.statemap import (
    Observable,
    ball_radius,
    bloch_to_matrix,
    expectation,
    matrix_to_bloch,
    overlap,
    purity,
)


def test_bloch_to_matrix_examples(bases):
    np.testing.assert_array_equal(bloch_to_matrix([0, 0, 0], bases[2]), np.eye(2) / 2)
    rho = bloch_to_matrix([0, 0, 1], bases[2])
    np.testing.assert_allclose(rho, np.diag([1, 0]), atol=1e-15)
    np.testing.assert_allclose(np.linalg.eigvalsh(rho), [0, 1], atol=1e-15)
    v = np.zeros(8)
    v[7] = -2 / math.sqrt(3)
    np.testing.assert_allclose(bloch_to_matrix(v, bases[3]), np.diag([0, 0, 1]), atol=1e-15)


def test_matrix_to_bloch_examples(bases):
    np.testing.assert_array_equal(matrix_to_bloch(np.eye(2) / 2, bases[2]), [0, 0, 0])
    np.testing.assert_allclose(matrix_to_bloch(np.diag([1, 0]), bases[2]), [0, 0, 1])


def test_matrix_to_bloch_rejects(bases):
    with pytest.raises(InvalidMatrix):
        matrix_to_bloch(np.array([[0.5, 0.1], [0.2, 0.5]]), bases[2])
    with pytest.raises(InvalidMatrix):
        matrix_to_bloch(np.eye(2), bases[2])
    with pytest.raises(DimensionMismatch):
        matrix_to_bloch(np.eye(3) / 3, bases[2])
    with pytest.raises(DimensionMismatch):
        bloch_to_matrix([0, 0], bases[2])


@pytest.mark.parametrize("n", range(2, 7))
def test_round_trip_both_ways(n, bases, rng):
    b = bases[n]
    v = rng.standard_normal((1000, n * n - 1))
    assert np.max(np.abs(matrix_to_bloch(bloch_to_matrix(v, b), b) - v)) <= 1e-12
    h = rng.standard_normal((50, n, n)) + 1j * rng.standard_normal((50, n, n))
    h = h + h.conj().transpose(0, 2, 1)
    h += (1 - np.trace(h, axis1=1, axis2=2).real)[:, None, None] * np.eye(n) / n
    assert np.max(np.abs(bloch_to_matrix(matrix_to_bloch(h, b), b) - h)) <= 1e-12


@given(arrays(np.float64, 8, elements=st.floats(-3, 3)))
@settings(max_examples=100, deadline=None)
def test_purity_is_trace_rho_squared(v):
    b = build_generator_basis(3)
    rho = bloch_to_matrix(v, b)
    assert purity(v) == pytest.approx(np.trace(rho @ rho).real, abs=1e-12)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)


def test_purity_examples():
    assert purity([0, 0, 0]) == 0.5
    assert purity(np.zeros(8)) == pytest.approx(1 / 3)
    assert purity([0.6, 0, 0.8]) == pytest.approx(1.0)


def test_ball_radius():
    assert ball_radius(2) == 1.0
    assert ball_radius(3) == pytest.approx(2 / math.sqrt(3))
    radii = [ball_radius(n) for n in range(2, 200)]
    assert all(a < b for a, b in zip(radii, radii[1:]))
    assert radii[-1] < math.sqrt(2)
    with pytest.raises(DimensionMismatch):
        ball_radius(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_pure_states_on_sphere(n, bases):
    v = matrix_to_bloch(random_pure_states(n, 200, seed=n), bases[n])
    np.testing.assert_allclose(np.linalg.norm(v, axis=1), ball_radius(n), atol=1e-10)


def test_expectation(bases, rng):
    assert expectation([0.1, 0.2, 0.3], Observable(2, 1.5, [0, 0, 0])) == 1.5
    assert expectation([0, 0, 1], Observable(2, 0.0, [0, 0, 1])) == pytest.approx(1.0)
    for n in (2, 3, 4):
        v = rng.standard_normal(n * n - 1)
        o = Observable(n, rng.standard_normal(), rng.standard_normal(n * n - 1))
        direct = np.trace(bloch_to_matrix(v, bases[n]) @ o.matrix(bases[n]))
        assert expectation(v, o) == pytest.approx(direct.real, abs=1e-12)
    with pytest.raises(DimensionMismatch):
        expectation(np.zeros(8), Observable(2, 0.0, [0, 0, 1]))


def test_overlap(bases, rng):
    assert overlap(np.zeros(8), np.zeros(8)) == pytest.approx(1 / 3)
    assert overlap([0, 0, 1], [0, 0, -1]) == pytest.approx(0.0)
    for n in (3, 4, 5):
        v = sample_states(n, 2, "mixed", seed=int(rng.integers(1 << 30)))
        rho = bloch_to_matrix(v, bases[n])
        assert overlap(v[0], v[1]) == pytest.approx(np.trace(rho[0] @ rho[1]).real, abs=1e-12)
    with pytest.raises(DimensionMismatch):
        overlap([0, 0, 1], np.zeros(8))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pure_pair_angle_bound(n, bases):
    v = matrix_to_bloch(random_pure_states(n, 400, seed=7), bases[n])
    a, b = v[:200], v[200:]
    cos = np.sum(a * b, axis=1) / (np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1))
    assert np.all(cos >= -1 / (n - 1) - 1e-10)
    ov = overlap(a, b)
    assert np.all((ov >= -1e-12) & (ov <= 1 + 1e-12))


def test_random_kets_normalised():
    psi = random_kets(4, 10, seed=3)
    np.testing.assert_allclose(np.linalg.norm(psi, axis=1), 1.0)
