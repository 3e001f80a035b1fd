"""Factorization of the gap function and the spectral enclosure it yields.

Once X solves the Riccati equation and Z = A + B X, the gap function
splits as M(lambda) = W(lambda) (lambda - Z) with
W(lambda) = I - B (C - lambda)^{-1} X, and W stays invertible near the
gap.  That factorization localizes sigma(Z) inside an interval computed
from ||B|| and the gap geometry alone, and forces definite signs on M
outside that interval.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .block import BlockProblem, SpectralGap, dist_spectra, herglotz_batch
from .errors import HypothesisViolated, LambdaOnSpectrumOfC
from .linalg import TOL_SPEC, as_matrix, hermitian_eig, operator_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnclosureBounds:
    """sigma(A + BX) is confined to [lower, upper] inside the gap."""

    delta_minus: float
    delta_plus: float
    lower: float  # min sigma(A) - delta_minus
    upper: float  # max sigma(A) + delta_plus


def compute_W(p: BlockProblem, X, lam: complex) -> np.ndarray:
    """The factor W(lambda) = I - B (C - lambda)^{-1} X."""
    X = as_matrix(X)
    lam = complex(lam)
    c = hermitian_eig(p.C).values
    if float(np.min(np.abs(c - lam))) <= TOL_SPEC:
        raise LambdaOnSpectrumOfC(f"lambda={lam} is within tol of sigma(C)")
    Y = np.linalg.solve(p.C - lam * np.eye(p.n_C), X)
    return np.eye(p.n_A, dtype=complex) - p.B @ Y


def _w_batch(p: BlockProblem, X: np.ndarray, lams: np.ndarray) -> np.ndarray:
    shifted = p.C[None, :, :] - lams[:, None, None] * np.eye(p.n_C, dtype=complex)
    Y = np.linalg.solve(shifted, np.broadcast_to(X, (lams.size, p.n_C, p.n_A)))
    return np.eye(p.n_A, dtype=complex) - np.matmul(p.B, Y)


def factorization_grid(p: BlockProblem, gap: SpectralGap, count: int = 50) -> np.ndarray:
    """Default evaluation grid: half real points across the gap, half on a circle.

    The real half spans the gap shrunk by tol_spec; the circle has radius
    equal to the gap length around its midpoint, dropping any point that
    lands within tol_spec of sigma(C).
    """
    if not gap.is_finite:
        raise ValueError("default grid needs a finite gap")
    half = count // 2
    # inset a few tolerances so the endpoint eigenvalues of C stay clear
    inset = 8 * TOL_SPEC
    real_pts = np.linspace(gap.alpha + inset, gap.beta - inset, half)
    angles = 2.0 * np.pi * (np.arange(count - half) + 0.5) / (count - half)
    circle = gap.midpoint + gap.length * np.exp(1j * angles)
    c = hermitian_eig(p.C).values
    keep = [z for z in circle if float(np.min(np.abs(c - z))) > 2 * TOL_SPEC]
    return np.concatenate([real_pts.astype(complex), np.array(keep, dtype=complex)])


def verify_factorization(p: BlockProblem, sol, grid) -> float:
    """Max normalized defect ||M(lam) - W(lam)(lam - Z)|| / (1 + ||M(lam)||) on the grid."""
    lams = np.asarray(grid, dtype=complex).ravel()
    c = hermitian_eig(p.C).values
    for lam in lams:
        if float(np.min(np.abs(c - lam))) <= TOL_SPEC:
            raise LambdaOnSpectrumOfC(f"grid point {lam} is within tol of sigma(C)")
    M = herglotz_batch(p, lams)
    W = _w_batch(p, sol.X, lams)
    eyeA = np.eye(p.n_A, dtype=complex)
    pencil = lams[:, None, None] * eyeA - sol.Z[None, :, :]
    defect = 0.0
    for Mk, Wk, Pk in zip(M, W, pencil):
        d = operator_norm(Mk - Wk @ Pk) / (1.0 + operator_norm(Mk))
        defect = max(defect, d)
    return defect


def enclosure_bounds(p: BlockProblem, gap: SpectralGap) -> EnclosureBounds:
    """Interval around sigma(A) guaranteed to contain sigma(A + BX).

    Requires sigma(A) inside the gap and ||B||^2 < d * gap length; the
    reach below sigma(A) is driven by the distance from sigma(A) to the
    far endpoint beta, and symmetrically above.
    """
    if not gap.is_finite:
        raise HypothesisViolated("enclosure needs a finite gap")
    a = hermitian_eig(p.A).values
    if not (a[0] > gap.alpha + TOL_SPEC and a[-1] < gap.beta - TOL_SPEC):
        raise HypothesisViolated("sigma(A) is not interior to the gap")
    d = gap.d
    if math.isnan(d):
        d = dist_spectra(p.A, p.C)
    b = operator_norm(p.B)
    if not b < math.sqrt(d * gap.length):
        raise HypothesisViolated(
            f"||B||={b:.6g} is not below sqrt(d |gap|)={math.sqrt(d * gap.length):.6g}"
        )
    delta_minus = b * math.tan(0.5 * math.atan2(2.0 * b, gap.beta - float(a[0])))
    delta_plus = b * math.tan(0.5 * math.atan2(2.0 * b, float(a[-1]) - gap.alpha))
    return EnclosureBounds(
        delta_minus=delta_minus,
        delta_plus=delta_plus,
        lower=float(a[0]) - delta_minus,
        upper=float(a[-1]) + delta_plus,
    )


def sign_conditions(
    p: BlockProblem, gap: SpectralGap, bounds: EnclosureBounds, samples: int = 20
) -> bool:
    """M(lambda) negative definite left of the enclosure, positive right of it.

    Samples equispaced interior points of (alpha, lower) and (upper, beta)
    and checks eigenvalue signs.  An empty side passes vacuously with a
    log note, which happens when sigma(A) hugs one endpoint.
    """
    ok = True
    for lo, hi, side in (
        (gap.alpha, bounds.lower, "left"),
        (bounds.upper, gap.beta, "right"),
    ):
        if not (hi - lo > 4 * TOL_SPEC):
            logger.info("sign interval on the %s side is empty, skipping", side)
            continue
        ts = (np.arange(samples) + 1.0) / (samples + 1.0)
        lams = lo + (hi - lo) * ts
        M = herglotz_batch(p, lams.astype(complex))
        for Mk in M:
            w = np.linalg.eigvalsh((Mk + Mk.conj().T) / 2.0)
            if side == "left" and w[-1] >= 0:
                ok = False
            if side == "right" and w[0] <= 0:
                ok = False
    return ok
