"""Positive-partial-transpose test for bipartite states.

Composite index convention: ``m = a * nb + b`` (0-based), i.e. row-major over
(A, B).  The transpose acts on subsystem B.  PPT is equivalent to
separability only for 2x2 and 2x3 systems; elsewhere a positive partial
transpose is reported as inconclusive.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, InvalidMatrix
from .membership import DEFAULT_TOL, Decision, _classify, eigen_batch
from .statemap import check_density_candidate


class Separability(enum.IntEnum):
    # values double as CLI exit codes
    SEPARABLE = 0
    ENTANGLED = 1
    PPT_INCONCLUSIVE = 2


@dataclass(frozen=True)
class CompositeDims:
    na: int
    nb: int

    def __post_init__(self):
        if self.na < 2 or self.nb < 2:
            raise DimensionMismatch(f"subsystem dimensions must be >= 2, got {self.na}x{self.nb}")

    @property
    def n(self) -> int:
        return self.na * self.nb

    @property
    def decisive(self) -> bool:
        return self.na == 2 and self.nb in (2, 3)

    @classmethod
    def parse(cls, text: str) -> "CompositeDims":
        try:
            na, nb = (int(x) for x in text.lower().split("x"))
        except ValueError:
            raise ValueError(f"dims must look like '2x3', got {text!r}") from None
        return cls(na, nb)


@dataclass(frozen=True)
class SeparabilityVerdict:
    decision: Separability
    min_margin: float


def partial_transpose(rho, dims: CompositeDims) -> np.ndarray:
    """Transpose every nb x nb block in place (transpose on subsystem B).

    Accepts stacks of matrices along leading axes.
    """
    rho = np.asarray(rho)
    if rho.shape[-2:] != (dims.n, dims.n):
        raise DimensionMismatch(f"matrix shape {rho.shape[-2:]} does not match dims {dims.na}x{dims.nb}")
    lead = rho.shape[:-2]
    t = rho.reshape(lead + (dims.na, dims.nb, dims.na, dims.nb))
    t = np.swapaxes(t, -3, -1)
    return t.reshape(lead + (dims.n, dims.n))


def _check_state(rho, tol):
    rho = check_density_candidate(rho)
    d, _ = eigen_batch(rho.reshape((-1,) + rho.shape[-2:]), tol)
    if np.any(d == Decision.OUTSIDE):
        raise InvalidMatrix("input is not a valid state (negative eigenvalue)")
    return rho


def _to_verdict(negative, dims):
    if negative:
        return Separability.ENTANGLED
    return Separability.SEPARABLE if dims.decisive else Separability.PPT_INCONCLUSIVE


def ppt_verdict(rho, dims: CompositeDims, tol: float = DEFAULT_TOL, check_state: bool = True) -> SeparabilityVerdict:
    """PPT via nonnegativity of the characteristic coefficients of rho^(T_B)."""
    rho = _check_state(rho, tol) if check_state else np.asarray(rho, dtype=np.complex128)
    pt = partial_transpose(rho, dims)
    a = _kernels.char_coefficients(pt[None])[0]
    margins = a[1:]
    _, failing = _classify(margins, tol)
    return SeparabilityVerdict(_to_verdict(failing[0] > 0, dims), float(margins.min()))


def ppt_batch(rhos, dims: CompositeDims, tol: float = DEFAULT_TOL, method: str = "coeff"):
    """Batched PPT decisions (Separability codes) and margins.

    ``method='coeff'`` uses characteristic coefficients, ``'eigen'`` the
    spectrum of the partial transpose.  States are not validated here.
    """
    pt = partial_transpose(np.asarray(rhos, dtype=np.complex128), dims)
    if method == "coeff":
        margins = _kernels.char_coefficients(pt)[:, 1:]
        decision, _ = _classify(margins, tol)
    elif method == "eigen":
        decision, margins = eigen_batch(pt, tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    neg = decision == Decision.OUTSIDE
    out = np.where(neg, Separability.ENTANGLED, Separability.SEPARABLE if dims.decisive else Separability.PPT_INCONCLUSIVE)
    # the PT decision (INSIDE/BOUNDARY/OUTSIDE) is returned alongside for agreement checks
    return out.astype(np.int8), decision, margins


def bell_state() -> np.ndarray:
    """``|Phi+><Phi+|`` with ``|Phi+> = (|00> + |11>)/sqrt(2)``."""
    psi = np.zeros(4, dtype=np.complex128)
    psi[0] = psi[3] = 1 / np.sqrt(2)
    return np.outer(psi, psi.conj())


def werner_state(p: float) -> np.ndarray:
    return p * bell_state() + (1 - p) * np.eye(4) / 4


def entanglement_threshold(family, dims: CompositeDims, lo: float = 0.0, hi: float = 1.0, xtol: float = 1e-9,
                           tol: float = DEFAULT_TOL, oracle: str = "coeff") -> float:
    """Bisect the parameter where ``family(p)`` becomes ENTANGLED.

    Assumes ``family(lo)`` is PPT and ``family(hi)`` is not.
    """
    def entangled(p):
        rho = family(p)
        if oracle == "eigen":
            d, _ = eigen_batch(partial_transpose(rho, dims)[None], tol)
            return d[0] == Decision.OUTSIDE
        return ppt_verdict(rho, dims, tol).decision is Separability.ENTANGLED

    if entangled(lo) or not entangled(hi):
        raise ValueError("family must be PPT at lo and entangled at hi")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if entangled(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
