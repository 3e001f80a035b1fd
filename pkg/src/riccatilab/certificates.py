"""Machine-checkable certificates for the subspace perturbation bounds.

Each certifier evaluates one theorem on one concrete instance: it checks
the hypothesis numerically, computes the claimed bound and the observed
quantity, and reports the margin between them.  Failure is data, never an
exception; exceptions are reserved for inputs on which the certified
quantity is not even defined.

Margins are oriented so that nonnegative (up to tol_cert) means the
theorem held: bound - observed for upper bounds, observed - bound for the
one lower-bound certificate (squared_subordination).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .block import BlockProblem, SpectralGap, dist_spectra, find_gaps
from .errors import ComplexSpectrum, DeltaNonpositive, HypothesisViolated, NotSubordinated
from .factorization import enclosure_bounds
from .linalg import TOL_SPEC, as_matrix, hermitian_eig, operator_norm
from .solvers import RiccatiSolution, residual_scale, solve_spectral, uniqueness_class_check

TOL_CERT = 1e-9


@dataclass(frozen=True)
class Certificate:
    theorem: str
    hypothesis_ok: bool
    bound_value: float
    observed_value: float
    margin: float
    passed: bool
    details: dict = field(default_factory=dict)


def _gap_d(p: BlockProblem, gap: SpectralGap) -> float:
    return gap.d if not math.isnan(gap.d) else dist_spectra(p.A, p.C)


def _sigma_a_interior(p: BlockProblem, gap: SpectralGap) -> bool:
    a = hermitian_eig(p.A).values
    return bool(a[0] > gap.alpha + TOL_SPEC and a[-1] < gap.beta - TOL_SPEC)


def real_eigenvalues(Z, what: str = "Z") -> np.ndarray:
    """Eigenvalues of a matrix that must have real spectrum, sorted ascending."""
    z = np.linalg.eigvals(as_matrix(Z))
    if z.size and float(np.max(np.abs(z.imag))) > TOL_SPEC:
        raise ComplexSpectrum(f"{what} has eigenvalue imag part {np.max(np.abs(z.imag)):.3e}")
    return np.sort(z.real)


def gamma_center(Z) -> float:
    """Midpoint of the hull of sigma(Z); demands a real spectrum."""
    z = real_eigenvalues(Z)
    return float(z[0] + z[-1]) / 2.0


def certify_existence(
    p: BlockProblem, gap: SpectralGap, sol: RiccatiSolution
) -> Certificate:
    """Existence of the gap solution under ||B|| < sqrt(d |gap|).

    The margin is hypothesis slack; passing additionally demands that the
    provided solution is accurate, that sigma(A+BX) landed inside the gap
    with sigma(C-B*X*) outside, and strictly interior at that.
    """
    if not gap.is_finite:
        raise ValueError("existence certificate needs a finite gap")
    d = _gap_d(p, gap)
    b = operator_norm(p.B)
    threshold = math.sqrt(d * gap.length)
    hyp = _sigma_a_interior(p, gap) and b < threshold - TOL_CERT
    res_ok = sol.residual <= 1e-6 * residual_scale(p, sol.X)
    uniq = uniqueness_class_check(p, sol, gap)
    z = real_eigenvalues(sol.Z)
    proper = bool(
        z.size == p.n_A
        and z[0] > gap.alpha + TOL_SPEC
        and z[-1] < gap.beta - TOL_SPEC
    )
    margin = threshold - b
    return Certificate(
        theorem="existence_1i",
        hypothesis_ok=hyp,
        bound_value=threshold,
        observed_value=b,
        margin=margin,
        passed=bool(hyp and margin >= -TOL_CERT and res_ok and uniq and proper),
        details={
            "d": d,
            "gap_length": gap.length,
            "residual": sol.residual,
            "residual_ok": res_ok,
            "uniqueness_class": uniq,
            "spectrum_interior": proper,
        },
    )


def certify_contraction(
    p: BlockProblem, gap: SpectralGap, sol: RiccatiSolution
) -> Certificate:
    """Strict contractivity ||X|| < 1 under ||B||^2 < d (|gap| - d).

    The coupling norm ||A'B + BC'|| is evaluated in the frame shifted by
    the gap midpoint, where the bound is sharpest and shift-invariantly
    stated.
    """
    if not gap.is_finite:
        raise ValueError("contraction certificate needs a finite gap")
    gamma = gap.midpoint
    d = _gap_d(p, gap)
    b = operator_norm(p.B)
    threshold = math.sqrt(d * (gap.length - d))
    hyp = _sigma_a_interior(p, gap) and b < threshold - TOL_CERT
    Ash = p.A - gamma * np.eye(p.n_A)
    Csh = p.C - gamma * np.eye(p.n_C)
    coupling = operator_norm(Ash @ p.B + p.B @ Csh)
    denom = d * (gap.length - d) - b * b
    if denom > 0:
        bound = math.tan(0.5 * math.atan2(2.0 * coupling, denom))
    else:
        bound = math.inf
    observed = sol.x_norm
    margin = bound - observed
    return Certificate(
        theorem="contraction_1ii",
        hypothesis_ok=hyp,
        bound_value=bound,
        observed_value=observed,
        margin=margin,
        passed=bool(hyp and margin >= -TOL_CERT and observed < 1.0),
        details={
            "gamma": gamma,
            "coupling_norm": coupling,
            "denominator": denom,
            "hypothesis_threshold": threshold,
            "b_norm": b,
        },
    )


def certify_tan_theta(p: BlockProblem, sol: RiccatiSolution) -> Certificate:
    """The sharp bound ||X|| <= ||B|| / dist(sigma(A+BX), sigma(C)).

    Works for any gap, finite or not, as long as sigma(A+BX) stays inside
    a single gap of C.  Raises DeltaNonpositive when the two spectra touch
    and the bound is undefined.
    """
    z = real_eigenvalues(sol.Z)
    c = hermitian_eig(p.C).values
    delta = float(np.min(np.abs(z[:, None] - c[None, :])))
    if delta <= TOL_SPEC:
        raise DeltaNonpositive(f"dist(sigma(Z), sigma(C)) = {delta:.3e}")
    in_one_gap = any(
        g.alpha < z[0] and z[-1] < g.beta for g in find_gaps(p.C)
    )
    res_ok = sol.residual <= 1e-6 * residual_scale(p, sol.X)
    b = operator_norm(p.B)
    bound = b / delta
    observed = sol.x_norm
    margin = bound - observed
    hyp = bool(in_one_gap and res_ok)
    return Certificate(
        theorem="tan_theta_2",
        hypothesis_ok=hyp,
        bound_value=bound,
        observed_value=observed,
        margin=margin,
        passed=bool(hyp and margin >= -TOL_CERT),
        details={"delta": delta, "b_norm": b, "residual": sol.residual},
    )


def certify_apriori(
    p: BlockProblem, gap: SpectralGap, sol: RiccatiSolution
) -> Certificate:
    """||X|| <= ||B|| / delta_tilde with delta_tilde from the enclosure alone.

    delta_tilde is how far the enclosure interval stays from the gap
    endpoints, a bound available before any solve.  Raises
    HypothesisViolated (from the enclosure) when ||B||^2 >= d |gap|.
    """
    bounds = enclosure_bounds(p, gap)
    a = hermitian_eig(p.A).values
    delta_tilde = min(
        float(a[0]) - gap.alpha - bounds.delta_minus,
        gap.beta - float(a[-1]) - bounds.delta_plus,
    )
    b = operator_norm(p.B)
    hyp = delta_tilde > 0
    bound = b / delta_tilde if hyp else math.inf
    observed = sol.x_norm
    margin = bound - observed
    return Certificate(
        theorem="apriori_bound",
        hypothesis_ok=hyp,
        bound_value=bound,
        observed_value=observed,
        margin=margin,
        passed=bool(hyp and margin >= -TOL_CERT),
        details={
            "delta_tilde": delta_tilde,
            "delta_minus": bounds.delta_minus,
            "delta_plus": bounds.delta_plus,
            "enclosure_lower": bounds.lower,
            "enclosure_upper": bounds.upper,
        },
    )


def certify_tan2theta(p: BlockProblem) -> Certificate:
    """||X|| <= tan(arctan(2||B||/d)/2) when sigma(A) lies strictly below sigma(C).

    No smallness of B is required; the subordination midpoint splits
    sigma(H) into n_A eigenvalues below and n_C above, and X is recovered
    from that splitting directly.
    """
    a = hermitian_eig(p.A).values
    c = hermitian_eig(p.C).values
    if not float(a[-1]) < float(c[0]) - TOL_SPEC:
        raise NotSubordinated(
            f"sup sigma(A) = {a[-1]:.6g} not below inf sigma(C) = {c[0]:.6g}"
        )
    d = float(c[0]) - float(a[-1])
    mid = (float(a[-1]) + float(c[0])) / 2.0
    sol = solve_spectral(p, SpectralGap(-math.inf, mid))
    b = operator_norm(p.B)
    bound = math.tan(0.5 * math.atan2(2.0 * b, d))
    observed = sol.x_norm
    margin = bound - observed
    return Certificate(
        theorem="tan_2theta_dk",
        hypothesis_ok=True,
        bound_value=bound,
        observed_value=observed,
        margin=margin,
        passed=bool(margin >= -TOL_CERT and observed < 1.0),
        details={"d": d, "b_norm": b, "split_at": mid, "residual": sol.residual},
    )


def squared_shift(p: BlockProblem, gap: SpectralGap) -> tuple[BlockProblem, Certificate]:
    """Square H - gamma at the gap midpoint and certify the induced subordination.

    The shifted square has diagonal blocks (A-gamma)^2 + BB* and
    (C-gamma)^2 + B*B whose spectra separate by at least
    d(|gap|-d) - ||B||^2, with the first block confined to
    [0, (|gap|/2 - d)^2 + ||B||^2].  Both claims are certified; the margin
    is the slack in the separation lower bound.
    """
    if not gap.is_finite:
        raise HypothesisViolated("squared shift needs a finite gap")
    d = _gap_d(p, gap)
    b = operator_norm(p.B)
    threshold = math.sqrt(d * (gap.length - d))
    if not (_sigma_a_interior(p, gap) and b < threshold - TOL_CERT):
        raise HypothesisViolated(
            f"||B||={b:.6g} not below sqrt(d(|gap|-d))={threshold:.6g}"
        )
    gamma = gap.midpoint
    Ash = p.A - gamma * np.eye(p.n_A)
    Csh = p.C - gamma * np.eye(p.n_C)
    Ahat = Ash @ Ash + p.B @ p.B.conj().T
    Chat = Csh @ Csh + p.B.conj().T @ p.B
    Bhat = Ash @ p.B + p.B @ Csh
    sq = BlockProblem(A=Ahat, B=Bhat, C=Chat)
    floor = d * (gap.length - d) - b * b
    achieved = dist_spectra(Ahat, Chat)
    ahat = hermitian_eig(Ahat).values
    chat = hermitian_eig(Chat).values
    subordinated = bool(float(ahat[-1]) < float(chat[0]))
    top = (gap.length / 2.0 - d) ** 2 + b * b
    contained = bool(float(ahat[0]) >= -TOL_CERT and float(ahat[-1]) <= top + TOL_CERT)
    margin = achieved - floor
    cert = Certificate(
        theorem="squared_subordination",
        hypothesis_ok=True,
        bound_value=floor,
        observed_value=achieved,
        margin=margin,
        passed=bool(margin >= -TOL_CERT and subordinated and contained),
        details={
            "gamma": gamma,
            "separation_floor": floor,
            "separation_achieved": achieved,
            "subordinated": subordinated,
            "ahat_interval_top": top,
            "ahat_contained": contained,
        },
    )
    return sq, cert
