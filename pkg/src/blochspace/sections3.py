"""Two-dimensional sections of the qutrit Bloch-vector space.

A section (i, j) keeps only components i and j of the 8-dimensional Gell-Mann
vector.  On such a plane the a_3 >= 0 condition reduces to one of four shapes:

* Type I   ({1,2,3}, 8): triangle
* Type II  ({4,5}, 3) or ({6,7}, -3): parabolic cap
* Type III ({4..7}, 8): ellipse
* Type IV  otherwise: disk of radius 2/3
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .generators import GeneratorBasis, StructureConstants, structure_constants
from .membership import DEFAULT_TOL, Decision, classify_batch
from .statemap import as_bloch_vector

SQRT3 = np.sqrt(3.0)
RADIUS = 2.0 / SQRT3


class SectionType(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"
    TYPE_IV = "IV"


class Cell(enum.Enum):
    IN = "IN"
    BALL_ONLY = "BALL_ONLY"
    OUT = "OUT"


@dataclass(frozen=True)
class SectionSpec:
    i: int
    j: int
    resolution: int = 401
    half_width: float = RADIUS

    def __post_init__(self):
        _check_axes(self.i, self.j)
        if self.resolution < 3:
            raise ValueError("resolution must be >= 3")
        if not self.half_width > 0:
            raise ValueError("range must be positive")

    def axis(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.resolution)


@dataclass(frozen=True)
class SectionClass:
    kind: SectionType
    sign: int = 1
    # (axis playing lambda_i, axis playing lambda_j) in the closed-form inequalities
    axes: tuple = (0, 0)


@dataclass(frozen=True)
class GridVerdict:
    li: float
    lj: float
    cell: Cell


def _check_axes(i, j):
    if not (1 <= i <= 8 and 1 <= j <= 8):
        raise DimensionMismatch(f"section axes must lie in 1..8, got ({i}, {j})")
    if i == j:
        raise ValueError("section axes must differ")


def a3_margin(v, sc: StructureConstants | None = None) -> float:
    """``4 - 9|v|^2 + 9 g_ijk v_i v_j v_k``, i.e. 108 * a_3 (same sign as a_3)."""
    sc = sc or structure_constants(3)
    if sc.n != 3:
        raise DimensionMismatch("a3_margin is defined for N = 3 only")
    v = as_bloch_vector(v, 3)
    cubic = np.einsum("ijk,...i,...j,...k->...", sc.dense_g(), v, v, v)
    return 4.0 - 9.0 * np.sum(v * v, axis=-1) + 9.0 * cubic


def classify_section(i: int, j: int) -> SectionClass:
    _check_axes(i, j)
    lo, hi = sorted((i, j))
    if hi == 8 and lo in (1, 2, 3):
        return SectionClass(SectionType.TYPE_I, 1, (lo, 8))
    if lo == 3 and hi in (4, 5):
        return SectionClass(SectionType.TYPE_II, 1, (hi, 3))
    if lo == 3 and hi in (6, 7):
        return SectionClass(SectionType.TYPE_II, -1, (hi, 3))
    if hi == 8 and lo in (4, 5, 6, 7):
        return SectionClass(SectionType.TYPE_III, 1, (lo, 8))
    return SectionClass(SectionType.TYPE_IV, 1, (lo, hi))


def closed_form_section_test(cls: SectionClass, li, lj):
    """Closed-form membership on a section, including the ball condition.

    ``li``/``lj`` are the coordinates along ``cls.axes[0]``/``cls.axes[1]``
    (raw values; the Type II sign flip is applied here).  Works elementwise.
    """
    li = np.asarray(li, dtype=np.float64)
    lj = np.asarray(lj, dtype=np.float64)
    ball = li * li + lj * lj <= RADIUS**2
    if cls.kind is SectionType.TYPE_I:
        ok = (lj <= 1 / SQRT3) & (lj >= SQRT3 * li - 2 / SQRT3) & (lj >= -SQRT3 * li - 2 / SQRT3)
    elif cls.kind is SectionType.TYPE_II:
        lj = cls.sign * lj
        ok = (lj <= 2 / 3) & (lj >= 1.5 * li * li - 2 / 3)
    elif cls.kind is SectionType.TYPE_III:
        ok = 2 * li * li + (4 / 3) * (lj + SQRT3 / 6) ** 2 <= 1
    else:
        ok = li * li + lj * lj <= (2 / 3) ** 2
    out = ok & ball
    return bool(out) if out.ndim == 0 else out


def section_vectors(spec: SectionSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Grid coordinates (row-major, j fastest) and the embedded 8-vectors."""
    ax = spec.axis()
    li, lj = np.meshgrid(ax, ax, indexing="ij")
    li, lj = li.ravel(), lj.ravel()
    v = np.zeros((li.size, 8))
    v[:, spec.i - 1] = li
    v[:, spec.j - 1] = lj
    return li, lj, v


def section_cells(spec: SectionSpec, basis: GeneratorBasis, tol: float = DEFAULT_TOL):
    """Vectorised section sampling.

    Returns ``(li, lj, cells, coeffs)``; ``cells`` holds :class:`Cell` values
    as strings.  BOUNDARY verdicts count as IN (closed set); a failure first
    seen at a_2 means the point is outside the ball.
    """
    if basis.n != 3:
        raise DimensionMismatch("sections are defined for N = 3 only")
    li, lj, v = section_vectors(spec)
    decision, failing, coeffs = classify_batch(v, basis, tol)
    cells = np.where(
        decision != Decision.OUTSIDE,
        Cell.IN.value,
        np.where(failing >= 3, Cell.BALL_ONLY.value, Cell.OUT.value),
    )
    return li, lj, cells, coeffs


def sample_section(spec: SectionSpec, basis: GeneratorBasis, tol: float = DEFAULT_TOL) -> list[GridVerdict]:
    li, lj, cells, _ = section_cells(spec, basis, tol)
    return [GridVerdict(float(x), float(y), Cell(c)) for x, y, c in zip(li, lj, cells)]


def closed_form_grid(spec: SectionSpec) -> np.ndarray:
    """Closed-form predicate on the grid of ``spec`` (same order as sampling)."""
    cls = classify_section(spec.i, spec.j)
    li, lj, v = section_vectors(spec)
    return closed_form_section_test(cls, v[:, cls.axes[0] - 1], v[:, cls.axes[1] - 1])


def _circle(r, m):
    t = np.linspace(0, 2 * np.pi, m)
    return r * np.cos(t), r * np.sin(t)


def boundary_curves(i: int, j: int, points: int = 200) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Closed-form boundary polylines in (lambda_i, lambda_j) coordinates."""
    cls = classify_section(i, j)
    curves = {"ball": _circle(RADIUS, points)}
    if cls.kind is SectionType.TYPE_I:
        xs = np.array([0.0, 1.0, -1.0, 0.0])
        ys = np.array([-2 / SQRT3, 1 / SQRT3, 1 / SQRT3, -2 / SQRT3])
        role = (xs, ys)
    elif cls.kind is SectionType.TYPE_II:
        edge = np.sqrt(8.0 / 9.0)
        x = np.linspace(-edge, edge, points)
        xs = np.concatenate([x, [-edge]])
        ys = cls.sign * np.concatenate([1.5 * x * x - 2 / 3, [2 / 3]])
        role = (xs, ys)
    elif cls.kind is SectionType.TYPE_III:
        t = np.linspace(0, 2 * np.pi, points)
        role = (np.cos(t) / np.sqrt(2), np.sqrt(3) / 2 * np.sin(t) - SQRT3 / 6)
    else:
        role = _circle(2 / 3, points)
    # role coordinates follow cls.axes; reorder to the caller's (i, j)
    curves["domain"] = role if cls.axes[0] == i else (role[1], role[0])
    return curves
