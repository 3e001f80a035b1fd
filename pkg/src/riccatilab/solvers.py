"""Three independent routes to the Riccati solution X.

All three target the same equation X A - C X + X B X = B*, whose solution
makes the graph of X the spectral subspace of H for the eigenvalues inside
a gap of C:

* spectral: eigendecompose H, project onto the gap eigenvalues, read X
  off the projection blocks;
* contour: integrate (C-lambda)^{-1} B* (Z-lambda)^{-1} around a circle
  separating sigma(Z) from sigma(C);
* fixed point: iterate the Sylvester map X -> solve(X (A+BX_k) - C X = B*).

Cross-checking them against each other is the point of the package, so
none of them shares intermediate results with another.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .block import BlockProblem, SpectralGap, assemble_H
from .errors import (
    DimensionMismatch,
    IterationDiverged,
    NotAGraph,
    QuadratureStall,
    SpectraTooClose,
    WrongSubspaceDimension,
)
from .linalg import TOL_SPEC, as_matrix, operator_norm, solve_sylvester

TOL_QUAD = 1e-12  # relative stop for contour node doubling
TOL_FIX = 1e-12  # relative stop for fixed-point steps
MAX_NODES = 4096
MAX_ITER = 500
DIVERGE_NORM = 1e6


@dataclass(frozen=True)
class RiccatiSolution:
    X: np.ndarray
    Z: np.ndarray  # A + B X
    Zhat: np.ndarray  # C - B* X*
    residual: float
    method: str

    @property
    def x_norm(self) -> float:
        return operator_norm(self.X)


@dataclass(frozen=True)
class Contour:
    """Circle separating sigma(Z) (inside) from sigma(C) (outside)."""

    center: float
    radius: float
    nodes: int = 16

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.nodes < 16 or self.nodes % 2:
            raise ValueError("nodes must be even and at least 16")


def residual(p: BlockProblem, X) -> float:
    """Operator norm of X A - C X + X B X - B*."""
    X = as_matrix(X)
    if X.shape != (p.n_C, p.n_A):
        raise DimensionMismatch(f"X must be {p.n_C}x{p.n_A}, got {X.shape}")
    return operator_norm(X @ p.A - p.C @ X + X @ p.B @ X - p.B.conj().T)


def residual_scale(p: BlockProblem, X) -> float:
    """Natural size of the Riccati residual: (||A||+||B||+||C||)(1+||X||)^2."""
    coeff = operator_norm(p.A) + operator_norm(p.B) + operator_norm(p.C)
    return coeff * (1.0 + operator_norm(X)) ** 2


def _solution(p: BlockProblem, X: np.ndarray, method: str) -> RiccatiSolution:
    Z = p.A + p.B @ X
    Zhat = p.C - p.B.conj().T @ X.conj().T
    return RiccatiSolution(X=X, Z=Z, Zhat=Zhat, residual=residual(p, X), method=method)


def solve_spectral(p: BlockProblem, gap: SpectralGap) -> RiccatiSolution:
    """Read X off the spectral projection of H onto the gap eigenvalues.

    Exactly n_A eigenvalues of H must lie in the open gap, each at least
    tol_spec away from the finite endpoints.  Eigenvalues hugging an
    endpoint are never counted as inside (the gap is open); they only
    raise WrongSubspaceDimension when the strict-interior count comes out
    wrong, because then their membership would have decided the subspace.
    The projection must be a graph over the A component (its upper-left
    block nonsingular), else NotAGraph.
    """
    H = assemble_H(p)
    w, U = np.linalg.eigh(H)
    inside = (w > gap.alpha + TOL_SPEC) & (w < gap.beta - TOL_SPEC)
    count = int(np.count_nonzero(inside))
    if count != p.n_A:
        for edge in (gap.alpha, gap.beta):
            if np.isfinite(edge) and np.any(np.abs(w - edge) <= TOL_SPEC):
                raise WrongSubspaceDimension(
                    f"{count} eigenvalues strictly inside (need {p.n_A}) and "
                    f"another within tol of the endpoint {edge}"
                )
        raise WrongSubspaceDimension(
            f"gap ({gap.alpha}, {gap.beta}) holds {count} eigenvalues, need {p.n_A}"
        )
    V = U[:, inside]
    Q = V @ V.conj().T
    Q11 = Q[: p.n_A, : p.n_A]
    smin = float(np.linalg.svd(Q11, compute_uv=False)[-1])
    if smin <= TOL_SPEC:
        raise NotAGraph(f"projection block is singular (smin={smin:.3e})")
    X = np.linalg.solve(Q11.T, Q[p.n_A :, : p.n_A].T).T
    return _solution(p, X, "spectral")


def build_contour(z_spectrum, c_spectrum, nodes: int = 16) -> Contour:
    """Circle centered on sigma(Z)'s hull, radius halfway out to sigma(C).

    center = midpoint of [min z, max z]; radius = half-width of that hull
    plus half the spectral distance, so both separations are strict.
    """
    z = np.asarray(z_spectrum, dtype=float).ravel()
    c = np.asarray(c_spectrum, dtype=float).ravel()
    if z.size == 0 or c.size == 0:
        raise ValueError("both spectra must be nonempty")
    sep = float(np.min(np.abs(z[:, None] - c[None, :])))
    if sep <= 2 * TOL_SPEC:
        raise SpectraTooClose(f"spectra are only {sep:.3e} apart")
    center = (z.max() + z.min()) / 2.0
    radius = (z.max() - z.min()) / 2.0 + sep / 2.0
    return Contour(center=float(center), radius=float(radius), nodes=nodes)


def _quad_sum(p: BlockProblem, Z: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """Sum of (C-lam)^{-1} B* (Z-lam)^{-1} (lam - center-shift) over nodes."""
    nA, nC = p.n_A, p.n_C
    shiftC = p.C[None, :, :] - lams[:, None, None] * np.eye(nC, dtype=complex)
    L = np.linalg.solve(shiftC, np.broadcast_to(p.B.conj().T, (lams.size, nC, nA)))
    shiftZ = Z[None, :, :] - lams[:, None, None] * np.eye(nA, dtype=complex)
    Y = np.linalg.solve(np.swapaxes(shiftZ, 1, 2), np.swapaxes(L, 1, 2))
    return np.swapaxes(Y, 1, 2)


def solve_contour(p: BlockProblem, Z, contour: Contour) -> RiccatiSolution:
    """Trapezoid quadrature of the contour representation of X.

    X = (2 pi i)^{-1} oint (C-lambda)^{-1} B* (Z-lambda)^{-1} d lambda over
    the counterclockwise circle; on N equispaced nodes this collapses to
    an average of integrand samples weighted by (lambda_k - center).  Nodes
    double until successive results agree to TOL_QUAD or MAX_NODES is hit.
    """
    Z = as_matrix(Z)
    if Z.shape != (p.n_A, p.n_A):
        raise DimensionMismatch(f"Z must be {p.n_A}x{p.n_A}, got {Z.shape}")

    def nodes_at(n: int, offset: bool) -> np.ndarray:
        # offset picks the midpoints of an existing n-grid, i.e. the new
        # nodes created when n doubles
        k = np.arange(n) + (0.5 if offset else 0.0)
        return contour.center + contour.radius * np.exp(2j * np.pi * k / n)

    n = contour.nodes
    lams = nodes_at(n, offset=False)
    total = np.add.reduce(_quad_sum(p, Z, lams) * (lams - contour.center)[:, None, None])
    X_prev = total / n
    while True:
        if 2 * n > MAX_NODES:
            raise QuadratureStall(f"no convergence within {MAX_NODES} nodes")
        lams = nodes_at(n, offset=True)
        total = total + np.add.reduce(
            _quad_sum(p, Z, lams) * (lams - contour.center)[:, None, None]
        )
        n *= 2
        X_new = total / n
        if operator_norm(X_new - X_prev) <= TOL_QUAD * (1.0 + operator_norm(X_new)):
            return _solution(p, X_new, "contour")
        X_prev = X_new


def solve_fixedpoint(p: BlockProblem, gap: SpectralGap) -> RiccatiSolution:
    """Iterate X_{k+1} = Sylvester solve of X (A + B X_k) - C X = B* from X_0 = 0.

    Contracts when ||B|| is small against the gap; no convergence promise
    otherwise.  Stops on a relative step of TOL_FIX, raises
    IterationDiverged past MAX_ITER steps or norm 1e6.
    """
    X = np.zeros((p.n_C, p.n_A), dtype=complex)
    Bstar = p.B.conj().T
    for _ in range(MAX_ITER):
        X_next = solve_sylvester(p.A + p.B @ X, p.C, Bstar)
        step = operator_norm(X_next - X)
        X = X_next
        if operator_norm(X) > DIVERGE_NORM:
            raise IterationDiverged(f"iterate norm exceeded {DIVERGE_NORM:.0e}")
        if step <= TOL_FIX * (1.0 + operator_norm(X)):
            return _solution(p, X, "fixedpoint")
    raise IterationDiverged(f"no convergence within {MAX_ITER} iterations")


def uniqueness_class_check(p: BlockProblem, sol: RiccatiSolution, gap: SpectralGap) -> bool:
    """True when sigma(A + BX) sits inside the gap and sigma(C - B*X*) outside.

    These two spectral locations are what single the solution out among
    all solutions of the equation.  Comparisons carry a tol_spec margin on
    each side so endpoint roundoff cannot flip the answer.
    """
    z = np.linalg.eigvals(sol.Z)
    zhat = np.linalg.eigvals(sol.Zhat)
    if np.max(np.abs(z.imag)) > TOL_SPEC or np.max(np.abs(zhat.imag)) > TOL_SPEC:
        return False
    z_inside = np.all((z.real > gap.alpha + TOL_SPEC) & (z.real < gap.beta - TOL_SPEC))
    zhat_outside = np.all(
        (zhat.real < gap.alpha + TOL_SPEC) | (zhat.real > gap.beta - TOL_SPEC)
    )
    return bool(z_inside and zhat_outside)
