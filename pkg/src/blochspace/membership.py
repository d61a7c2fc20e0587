"""Membership of Bloch vectors via characteristic-polynomial coefficients.

A unit-trace Hermitian matrix is a state iff every coefficient ``a_1..a_N`` of
``det(x I - rho) = sum_j (-1)^j a_j x^(N-j)`` is nonnegative.  The coefficients
come from trace powers and Newton's identities; the eigenvalue route
(:func:`eigenvalue_oracle`) is kept separate as an independent check.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BlochError, DimensionMismatch, InvalidMatrix
from .generators import GeneratorBasis, StructureConstants
from .statemap import as_bloch_vector, bloch_to_matrix, check_density_candidate

DEFAULT_TOL = 1e-9


class Decision(enum.IntEnum):
    # values double as CLI exit codes
    INSIDE = 0
    OUTSIDE = 1
    BOUNDARY = 2


@dataclass(frozen=True)
class MomentVector:
    n: int
    c: np.ndarray  # C_1..C_q

    def __post_init__(self):
        object.__setattr__(self, "c", np.asarray(self.c, dtype=np.float64))


@dataclass(frozen=True)
class CoefficientVector:
    n: int
    a: np.ndarray  # a_0..a_k with a_0 = 1

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        if a[0] != 1.0:
            raise ValueError("a_0 must be exactly 1")
        object.__setattr__(self, "a", a)

    @property
    def margins(self) -> np.ndarray:
        return self.a[1:]


@dataclass(frozen=True)
class MembershipVerdict:
    decision: Decision
    margins: tuple
    failing_index: int | None = None

    @property
    def min_margin(self) -> float:
        return min(self.margins)


def moments_trace(rho, qmax: int) -> MomentVector:
    """Power sums ``tr rho^q`` for ``q = 1..qmax`` by repeated multiplication."""
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    rho = np.asarray(rho, dtype=np.complex128)
    c = _kernels.power_sums(rho[None], qmax)[0]
    return MomentVector(rho.shape[-1], c)


def _contractions(v, sc):
    """|v|^2, g_ijk v_i v_j v_k and sum_m (g_ijm v_i v_j)^2 over leading axes."""
    sq = np.sum(v * v, axis=-1)
    if sc.n == 2:
        zero = np.zeros_like(sq)
        return sq, zero, zero
    gv = np.einsum("ijk,...i,...j->...k", sc.dense_g(), v, v, optimize=True)
    return sq, np.sum(gv * v, axis=-1), np.sum(gv * gv, axis=-1)


def moments_closed_form(v, sc: StructureConstants, q: int):
    """Power sum ``tr rho^q`` (q = 2, 3, 4) as a polynomial in the Bloch vector.

    Only |v|^2 and g-contractions appear; the f-terms cancel by antisymmetry.
    Accepts stacked vectors.
    """
    if q not in (2, 3, 4):
        raise ValueError(f"closed-form moments only for q in (2, 3, 4), got {q}")
    n = sc.n
    v = as_bloch_vector(v, n)
    sq, cubic, quartic = _contractions(v, sc)
    if q == 2:
        return (4 * n + 2 * n**2 * sq) / (2 * n) ** 2
    if q == 3:
        return (8 * n + 12 * n**2 * sq + 2 * n**3 * cubic) / (2 * n) ** 3
    return (16 * n + 48 * n**2 * sq + 16 * n**3 * cubic + 4 * n**3 * sq**2 + 2 * n**4 * quartic) / (2 * n) ** 4


def char_coefficients_newton(moments: MomentVector) -> CoefficientVector:
    n = moments.n
    if len(moments.c) < n:
        raise ValueError(f"need power sums up to q={n}, got {len(moments.c)}")
    a = _kernels.newton(moments.c[None, :n], n)[0]
    return CoefficientVector(n, a)


def closed_form_batch(v, sc: StructureConstants) -> np.ndarray:
    """Rows ``a_0..a_min(N,4)`` from the explicit structure-constant polynomials."""
    n = sc.n
    v = np.atleast_2d(as_bloch_vector(v, n))
    sq, cubic, quartic = _contractions(v, sc)
    cols = [np.ones_like(sq), np.ones_like(sq), ((n - 1) / n - 0.5 * sq) / 2]
    if n >= 3:
        cols.append(((n - 1) * (n - 2) / n**2 - 3 * (n - 2) / (2 * n) * sq + 0.5 * cubic) / 6)
    if n >= 4:
        cols.append(
            (
                (n - 1) * (n - 2) * (n - 3) / n**3
                - 3 * (n - 2) * (n - 3) / n**2 * sq
                + 3 * (n - 2) / (4 * n) * sq**2
                + 2 * (n - 3) / n * cubic
                - 0.75 * quartic
            )
            / 24
        )
    return np.stack(cols, axis=-1)


def char_coefficients_closed_form(v, sc: StructureConstants) -> CoefficientVector:
    """``a_1..a_min(N,4)`` as explicit polynomials in |v|^2 and g-contractions."""
    v = as_bloch_vector(v, sc.n)
    if v.ndim != 1:
        raise DimensionMismatch("use closed_form_batch for stacked vectors")
    return CoefficientVector(sc.n, closed_form_batch(v, sc)[0])


def positivity_from_coefficients(a: CoefficientVector, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.all(a.margins >= -tol))


def _classify(margins, tol):
    """Three-way verdicts for rows of margins; returns (decision, failing_index).

    ``failing_index`` is 1-based and 0 where nothing fails.
    """
    margins = np.atleast_2d(margins)
    bad = margins < -tol
    failing = np.where(bad.any(axis=1), bad.argmax(axis=1) + 1, 0)
    decision = np.full(margins.shape[0], Decision.BOUNDARY, dtype=np.int8)
    decision[np.all(margins > tol, axis=1)] = Decision.INSIDE
    decision[failing > 0] = Decision.OUTSIDE
    return decision, failing


def _verdict(margins, tol):
    d, fail = _classify(margins, tol)
    return MembershipVerdict(Decision(int(d[0])), tuple(float(x) for x in margins), int(fail[0]) or None)


def coefficients_batch(vectors, basis: GeneratorBasis) -> np.ndarray:
    """Rows ``a_0..a_N`` for a stack of Bloch vectors, shape (B, N+1)."""
    vectors = np.atleast_2d(as_bloch_vector(vectors, basis.n))
    return _kernels.char_coefficients(bloch_to_matrix(vectors, basis))


def classify_batch(vectors, basis: GeneratorBasis, tol: float = DEFAULT_TOL):
    """Vectorised :func:`is_bloch_vector`: ``(decisions, failing_index, coeffs)``."""
    a = coefficients_batch(vectors, basis)
    d, fail = _classify(a[:, 1:], tol)
    return d, fail, a


def is_bloch_vector(v, basis: GeneratorBasis, tol: float = DEFAULT_TOL) -> MembershipVerdict:
    v = as_bloch_vector(v, basis.n)
    if v.ndim != 1:
        raise DimensionMismatch("is_bloch_vector takes a single vector; use classify_batch for stacks")
    rho = bloch_to_matrix(v, basis)
    a = char_coefficients_newton(moments_trace(rho, basis.n))
    return _verdict(a.margins, tol)


def eigen_batch(rhos, tol: float = DEFAULT_TOL):
    """Vectorised eigenvalue oracle: ``(decisions, eigenvalues)``."""
    rhos = np.asarray(rhos, dtype=np.complex128)
    try:
        ev = np.linalg.eigvalsh(rhos)
    except np.linalg.LinAlgError as exc:
        raise BlochError(f"eigensolver failed: {exc}") from exc
    ev = np.atleast_2d(ev)
    mins = ev.min(axis=1)
    decision = np.full(ev.shape[0], Decision.BOUNDARY, dtype=np.int8)
    decision[mins > tol] = Decision.INSIDE
    decision[mins < -tol] = Decision.OUTSIDE
    return decision, ev


def eigenvalue_oracle(rho, tol: float = DEFAULT_TOL) -> MembershipVerdict:
    """Positivity from the Hermitian spectrum; margins are the eigenvalues."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise InvalidMatrix("matrix is not Hermitian")
    if not np.all(np.isfinite(rho)):
        raise BlochError("eigensolver failed: matrix has non-finite entries")
    d, ev = eigen_batch(rho[None], tol)
    failing = int(np.argmax(ev[0] < -tol)) + 1 if d[0] == Decision.OUTSIDE else None
    return MembershipVerdict(Decision(int(d[0])), tuple(float(x) for x in ev[0]), failing)


def state_coefficients(rho) -> CoefficientVector:
    """Newton-path coefficients of a validated density candidate."""
    rho = check_density_candidate(rho)
    return char_coefficients_newton(moments_trace(rho, rho.shape[-1]))
