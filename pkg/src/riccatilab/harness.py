"""Deterministic instance generation and certificate sweeps.

Instances are built from a SplitMix64 stream so a (seed, spec) pair pins
the problem bit for bit; the draw order is part of the contract and is
documented in the README.  Sweeps run the spectral solver plus every
applicable certifier over a grid of specs and collect one CSV row per
instance, never dropping failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .block import BlockProblem, SpectralGap, select_gap
from .certificates import (
    Certificate,
    certify_apriori,
    certify_contraction,
    certify_existence,
    certify_tan2theta,
    certify_tan_theta,
    squared_shift,
)
from .errors import InfeasibleSpec, RiccatiLabError
from .rng import SplitMix64
from .solvers import solve_spectral

PLACEMENTS = ("interior", "subordinated", "overlapping")


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one random instance.

    gap is the target interval (alpha, beta); d_target is the distance
    from sigma(A) to the nearest endpoint (attained exactly for interior
    and subordinated placements); b_ratio scales ||B|| relative to
    sqrt(d_target * (beta - alpha)).
    """

    seed: int
    n_A: int
    n_C: int
    gap: tuple[float, float]
    d_target: float
    b_ratio: float
    placement: str = "interior"

    def __post_init__(self):
        alpha, beta = self.gap
        if self.n_A < 1 or self.n_C < 1:
            raise InfeasibleSpec("n_A and n_C must be at least 1")
        if not alpha < beta:
            raise InfeasibleSpec(f"gap ({alpha}, {beta}) is empty")
        if not 0 < self.d_target <= (beta - alpha) / 2.0:
            raise InfeasibleSpec(
                f"d_target={self.d_target} must be in (0, {(beta - alpha) / 2}]"
            )
        if self.b_ratio < 0:
            raise InfeasibleSpec("b_ratio must be nonnegative")
        if self.placement not in PLACEMENTS:
            raise InfeasibleSpec(f"unknown placement {self.placement!r}")


@dataclass(frozen=True)
class ExampleSpec:
    """One member of the closed-form sharpness family (see example_problem)."""

    d: float
    b: float

    def __post_init__(self):
        if self.d <= 0:
            raise InfeasibleSpec("d must be positive")
        if self.b < 0:
            raise InfeasibleSpec("b must be nonnegative")


SweepSpec = Union[GenSpec, ExampleSpec]


def example_problem(d: float, b: float) -> BlockProblem:
    """The rank-one family A = 0, B = (b/sqrt2)(1, 1), C = diag(d, -d).

    Its Riccati solution is known in closed form (see exact_example_solution)
    with ||X|| = b/d exactly, A + BX = 0, and the tan-theta bound attained
    with equality, which makes the family the sharpness witness for the
    certificates.
    """
    s = b / math.sqrt(2.0)
    return BlockProblem(
        A=np.array([[0.0]], dtype=complex),
        B=np.array([[s, s]], dtype=complex),
        C=np.array([[d, 0.0], [0.0, -d]], dtype=complex),
    )


def exact_example_solution(d: float, b: float) -> np.ndarray:
    """Closed-form X for example_problem(d, b): column (-b, b) / (sqrt2 d)."""
    s = b / (math.sqrt(2.0) * d)
    return np.array([[-s], [s]], dtype=complex)


def _spread_uniforms(rng: SplitMix64, count: int) -> list[float]:
    return [rng.uniform() for _ in range(count)]


def generate(spec: GenSpec) -> BlockProblem:
    """Build the instance for a spec; same spec, same bits, every time.

    Draw order: C placement split, C eigenvalue offsets, A eigenvalues,
    B entries (row-major, one Box-Muller pair per entry), then the two
    unitaries.  Endpoint eigenvalues of C and the d_target-attaining
    eigenvalue of A are placed exactly, not sampled.
    """
    alpha, beta = spec.gap
    length = beta - alpha
    spread = length / 2.0
    rng = SplitMix64(spec.seed)

    if spec.placement == "subordinated":
        c_eigs = [beta] + [beta + spread * u for u in _spread_uniforms(rng, spec.n_C - 1)]
    else:
        if spec.n_C < 2:
            raise InfeasibleSpec("a finite gap needs n_C >= 2 to hit both endpoints")
        k_lo = 1 + rng.next_u64() % (spec.n_C - 1)
        k_hi = spec.n_C - k_lo
        c_eigs = [alpha] + [alpha - spread * u for u in _spread_uniforms(rng, k_lo - 1)]
        c_eigs += [beta] + [beta + spread * u for u in _spread_uniforms(rng, k_hi - 1)]

    if spec.placement == "interior":
        lo, hi = alpha + spec.d_target, beta - spec.d_target
        a_eigs = [lo] + [lo + (hi - lo) * u for u in _spread_uniforms(rng, spec.n_A - 1)]
    elif spec.placement == "subordinated":
        hi = beta - spec.d_target
        a_eigs = [hi] + [alpha + (hi - alpha) * u for u in _spread_uniforms(rng, spec.n_A - 1)]
    else:
        lo, hi = alpha - 0.3 * length, beta + 0.3 * length
        a_eigs = []
        for _ in range(spec.n_A):
            while True:
                a = lo + (hi - lo) * rng.uniform()
                if min(abs(a - c) for c in c_eigs) > 1e-6 * length:
                    a_eigs.append(a)
                    break

    B = rng.complex_normal_matrix(spec.n_A, spec.n_C)
    target = spec.b_ratio * math.sqrt(spec.d_target * length)
    norm = float(np.linalg.norm(B, 2))
    B = B * (target / norm) if target > 0 else np.zeros_like(B)

    U_A = rng.unitary(spec.n_A)
    U_C = rng.unitary(spec.n_C)
    A = (U_A * np.array(a_eigs)) @ U_A.conj().T
    C = (U_C * np.array(c_eigs)) @ U_C.conj().T
    return BlockProblem(A=A, B=B, C=C)


def realize(spec: SweepSpec) -> tuple[BlockProblem, SpectralGap]:
    """Instance plus its bound gap (d attached) for any sweep spec."""
    if isinstance(spec, ExampleSpec):
        p = example_problem(spec.d, spec.b)
        return p, select_gap(p, 0.0)
    p = generate(spec)
    alpha, beta = spec.gap
    return p, select_gap(p, (alpha + beta) / 2.0)


THEOREM_COLUMNS = ("existence", "contraction", "tan_theta", "tan2theta", "squared")

CSV_COLUMNS = (
    "seed",
    "n_A",
    "n_C",
    "alpha",
    "beta",
    "d",
    "b",
    "method",
    "residual",
    "x_norm",
    "existence_pass",
    "existence_margin",
    "contraction_pass",
    "contraction_margin",
    "tan_theta_pass",
    "tan_theta_margin",
    "apriori_pass",
    "apriori_margin",
    "tan2theta_pass",
    "tan2theta_margin",
    "squared_pass",
    "squared_margin",
    "status",
)


@dataclass(frozen=True)
class SweepResult:
    rows: list[dict]

    @property
    def columns(self) -> tuple[str, ...]:
        return CSV_COLUMNS

    def write_csv(self, stream) -> None:
        stream.write(",".join(CSV_COLUMNS) + "\n")
        for row in self.rows:
            stream.write(",".join(_cell(row.get(col)) for col in CSV_COLUMNS) + "\n")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "" if math.isnan(value) else repr(value)
    return str(value)


def _record(row: dict, name: str, cert: Certificate | None) -> None:
    if cert is None:
        row[f"{name}_pass"] = None
        row[f"{name}_margin"] = None
    else:
        row[f"{name}_pass"] = cert.passed
        row[f"{name}_margin"] = float(cert.margin)


def sweep(spec_grid: Iterable[SweepSpec]) -> SweepResult:
    """Solve and certify every spec; one row per instance, failures tagged.

    The spectral solver provides the X fed to every certifier.  When it
    fails, the error class name lands in the status column and every
    solution-dependent cell stays empty; certificate cells also stay empty
    whenever their theorem does not apply to the instance (infinite gap,
    hypothesis not evaluable, not subordinated).
    """
    rows = []
    for spec in spec_grid:
        p, gap = realize(spec)
        alpha, beta = (spec.gap if isinstance(spec, GenSpec) else (-spec.d, spec.d))
        row: dict = {
            "seed": spec.seed if isinstance(spec, GenSpec) else None,
            "n_A": p.n_A,
            "n_C": p.n_C,
            "alpha": float(alpha),
            "beta": float(beta),
            "d": float(gap.d),
            "b": float(np.linalg.norm(p.B, 2)),
        }
        try:
            sol = solve_spectral(p, gap)
            row["method"] = sol.method
            row["residual"] = float(sol.residual)
            row["x_norm"] = float(sol.x_norm)
            row["status"] = "ok"
        except RiccatiLabError as err:
            row["method"] = None
            row["residual"] = None
            row["x_norm"] = None
            row["status"] = type(err).__name__
            for name in THEOREM_COLUMNS + ("apriori",):
                _record(row, name, None)
            rows.append(row)
            continue

        finite = gap.is_finite
        _record(row, "existence", certify_existence(p, gap, sol) if finite else None)
        _record(row, "contraction", certify_contraction(p, gap, sol) if finite else None)
        try:
            _record(row, "tan_theta", certify_tan_theta(p, sol))
        except RiccatiLabError:
            _record(row, "tan_theta", None)
        try:
            _record(row, "apriori", certify_apriori(p, gap, sol) if finite else None)
        except RiccatiLabError:
            _record(row, "apriori", None)
        try:
            _record(row, "tan2theta", certify_tan2theta(p))
        except RiccatiLabError:
            _record(row, "tan2theta", None)
        try:
            _record(row, "squared", squared_shift(p, gap)[1] if finite else None)
        except RiccatiLabError:
            _record(row, "squared", None)
        rows.append(row)
    return SweepResult(rows=rows)
