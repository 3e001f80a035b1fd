"""Block operator matrices H = [[A, B], [B*, C]] and their gap structure.

A and C are Hermitian, B couples them.  The module knows how to assemble
H, locate the spectral gaps of C, evaluate the gap function
M(lambda) = lambda - A + B (C - lambda)^{-1} B*, and rebuild the resolvent
of H from M alone, which is the identity the solvers and certificates
lean on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DimensionMismatch, LambdaOnSpectrum, LambdaOnSpectrumOfC
from .linalg import (
    TOL_SPEC,
    as_matrix,
    hermitian_eig,
    operator_norm,
    require_hermitian,
)


def _readonly(M: np.ndarray) -> np.ndarray:
    out = np.array(M, dtype=complex)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class BlockProblem:
    """Immutable problem data (A, B, C) with shapes (nA,nA), (nA,nC), (nC,nC)."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        A = require_hermitian(self.A, "A")
        C = require_hermitian(self.C, "C")
        B = as_matrix(self.B)
        if not np.all(np.isfinite(B)):
            raise ValueError("B has non-finite entries")
        if B.shape != (A.shape[0], C.shape[0]):
            raise DimensionMismatch(
                f"B must be {A.shape[0]}x{C.shape[0]}, got {B.shape}"
            )
        object.__setattr__(self, "A", _readonly(A))
        object.__setattr__(self, "B", _readonly(B))
        object.__setattr__(self, "C", _readonly(C))

    @property
    def n_A(self) -> int:
        return self.A.shape[0]

    @property
    def n_C(self) -> int:
        return self.C.shape[0]


@dataclass(frozen=True)
class SpectralGap:
    """Open interval (alpha, beta) free of sigma(C); rays use infinite endpoints.

    d is dist(sigma(A), sigma(C)) once the gap has been bound to a problem
    via select_gap; it stays NaN for gaps straight out of find_gaps.
    """

    alpha: float
    beta: float
    d: float = field(default=math.nan)

    def __post_init__(self):
        if not self.alpha < self.beta:
            raise ValueError(f"empty gap ({self.alpha}, {self.beta})")

    @property
    def length(self) -> float:
        return self.beta - self.alpha

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.alpha) and math.isfinite(self.beta)

    def contains(self, x: float, margin: float = 0.0) -> bool:
        return self.alpha + margin < x < self.beta - margin

    @property
    def midpoint(self) -> float:
        if not self.is_finite:
            raise ValueError("infinite gap has no midpoint")
        return (self.alpha + self.beta) / 2.0


def assemble_H(p: BlockProblem) -> np.ndarray:
    """The Hermitian block matrix [[A, B], [B*, C]]."""
    return np.block([[p.A, p.B], [p.B.conj().T, p.C]])


def find_gaps(C) -> list[SpectralGap]:
    """All maximal open intervals in the complement of sigma(C).

    Eigenvalues closer than tol_spec are merged into one cluster (their
    mean represents them), so fake hairline gaps never appear.  The two
    infinite rays come first and last; the finite gaps tile the convex
    hull of the spectrum in between.
    """
    w = hermitian_eig(C).values
    reps: list[float] = []
    cluster = [float(w[0])]
    for x in w[1:]:
        if float(x) - cluster[-1] <= TOL_SPEC:
            cluster.append(float(x))
        else:
            reps.append(sum(cluster) / len(cluster))
            cluster = [float(x)]
    reps.append(sum(cluster) / len(cluster))
    gaps = [SpectralGap(-math.inf, reps[0])]
    for lo, hi in zip(reps, reps[1:]):
        gaps.append(SpectralGap(lo, hi))
    gaps.append(SpectralGap(reps[-1], math.inf))
    return gaps


def dist_spectra(A, C) -> float:
    """dist(sigma(A), sigma(C)) for Hermitian A and C."""
    a = hermitian_eig(A).values
    c = hermitian_eig(C).values
    return float(np.min(np.abs(a[:, None] - c[None, :])))


def select_gap(p: BlockProblem, point: float | None = None) -> SpectralGap:
    """Pick the gap of C containing `point` and bind d = dist(sigma(A), sigma(C)).

    Without a point, the midpoint of sigma(A)'s hull names the gap, which
    is the natural choice when sigma(A) is expected to sit inside one gap.
    """
    if point is None:
        a = hermitian_eig(p.A).values
        point = float(a[0] + a[-1]) / 2.0
    for gap in find_gaps(p.C):
        if gap.alpha < point < gap.beta:
            return replace(gap, d=dist_spectra(p.A, p.C))
    raise LambdaOnSpectrumOfC(f"point {point} is not interior to any gap of C")


@dataclass(frozen=True)
class HerglotzSample:
    lam: complex
    M: np.ndarray


def _dist_to_spectrum(lam: complex, w: np.ndarray) -> float:
    return float(np.min(np.abs(w - lam)))


def herglotz_batch(p: BlockProblem, lams: np.ndarray) -> np.ndarray:
    """M(lambda) stacked over a 1-d array of lambdas, shape (N, nA, nA).

    No spectrum checks here; callers guarantee the points sit in rho(C).
    """
    lams = np.asarray(lams, dtype=complex).ravel()
    nA, nC = p.n_A, p.n_C
    eyeC = np.eye(nC, dtype=complex)
    shifted = p.C[None, :, :] - lams[:, None, None] * eyeC
    rhs = np.broadcast_to(p.B.conj().T, (lams.size, nC, nA))
    Y = np.linalg.solve(shifted, rhs)
    eyeA = np.eye(nA, dtype=complex)
    return lams[:, None, None] * eyeA - p.A[None, :, :] + np.matmul(p.B, Y)


def herglotz_M(p: BlockProblem, lam: complex) -> HerglotzSample:
    """One sample of the gap function M(lambda) = lambda - A + B (C-lambda)^{-1} B*."""
    lam = complex(lam)
    c = hermitian_eig(p.C).values
    if _dist_to_spectrum(lam, c) <= TOL_SPEC:
        raise LambdaOnSpectrumOfC(f"lambda={lam} is within tol of sigma(C)")
    return HerglotzSample(lam=lam, M=herglotz_batch(p, np.array([lam]))[0])


def resolvent_H(p: BlockProblem, lam: complex) -> np.ndarray:
    """(H - lambda)^{-1} rebuilt from M(lambda)^{-1} and resolvents of C.

    The representation inverts only the small nA block M(lambda) plus
    C - lambda; it is exact wherever lambda avoids both spectra.
    """
    lam = complex(lam)
    c = hermitian_eig(p.C).values
    if _dist_to_spectrum(lam, c) <= TOL_SPEC:
        raise LambdaOnSpectrumOfC(f"lambda={lam} is within tol of sigma(C)")
    h = hermitian_eig(assemble_H(p)).values
    if _dist_to_spectrum(lam, h) <= TOL_SPEC:
        raise LambdaOnSpectrum(f"lambda={lam} is within tol of sigma(H)")
    nA, nC = p.n_A, p.n_C
    Cres = np.linalg.inv(p.C - lam * np.eye(nC))
    M = herglotz_batch(p, np.array([lam]))[0]
    col = np.vstack([np.eye(nA, dtype=complex), -Cres @ p.B.conj().T])
    row = np.hstack([np.eye(nA, dtype=complex), -p.B @ Cres])
    out = np.zeros((nA + nC, nA + nC), dtype=complex)
    out[nA:, nA:] = Cres
    return out - col @ np.linalg.solve(M, row)


@dataclass(frozen=True)
class SpectrumIdentityResult:
    ok: bool
    checked: int
    skipped: int
    mismatches: list

    def __bool__(self) -> bool:
        return self.ok


def spectrum_identity_check(
    p: BlockProblem, gap: SpectralGap, grid: np.ndarray
) -> SpectrumIdentityResult:
    """Confirm that M(lambda) is singular exactly at eigenvalues of H.

    Within the gap (and more generally in rho(C)) the zeros of det M are
    the eigenvalues of H.  Each grid point is classified by its distance
    to sigma(H): near points must make M singular, far points must not,
    and a thin annulus in between is skipped because the two scale-aware
    thresholds need not agree there.  Eigenvalues of H inside the gap are
    appended to the grid so the singular side is always exercised.
    """
    H = assemble_H(p)
    h = hermitian_eig(H).values
    c = hermitian_eig(p.C).values
    tol_near = TOL_SPEC * (1.0 + operator_norm(H))

    pts = [complex(x) for x in np.asarray(grid, dtype=complex).ravel()]
    for e in h:
        if gap.alpha < e < gap.beta:
            pts.append(complex(e))
    for lam in pts:
        if _dist_to_spectrum(lam, c) <= TOL_SPEC:
            raise LambdaOnSpectrumOfC(f"grid point {lam} is within tol of sigma(C)")

    M = herglotz_batch(p, np.array(pts))
    mismatches = []
    checked = skipped = 0
    for lam, Mk in zip(pts, M):
        dist = _dist_to_spectrum(lam, h)
        if 0.01 * tol_near <= dist <= 100.0 * tol_near:
            skipped += 1
            continue
        smin = float(np.linalg.svd(Mk, compute_uv=False)[-1])
        singular = smin < TOL_SPEC * (1.0 + operator_norm(Mk))
        checked += 1
        if singular != (dist < tol_near):
            mismatches.append((lam, dist, smin))
    return SpectrumIdentityResult(
        ok=not mismatches, checked=checked, skipped=skipped, mismatches=mismatches
    )
