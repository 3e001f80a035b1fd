"""JSON encoding for problems, solutions, and certificates.

Complex matrix entries travel as [re, im] pairs inside nested row arrays.
The decoder also accepts bare numbers for real entries, so hand-written
problem files stay pleasant.  All emitters sort keys and use plain float
repr, which keeps outputs byte-stable for identical inputs.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .block import BlockProblem
from .certificates import Certificate
from .solvers import RiccatiSolution


def matrix_to_json(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_json(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a non-empty list of rows")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise ValueError("matrix rows must be non-empty and equal length")
    out = np.empty((len(rows), width), dtype=complex)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            if isinstance(entry, (int, float)):
                out[i, j] = complex(entry)
            elif (
                isinstance(entry, list)
                and len(entry) == 2
                and all(isinstance(x, (int, float)) for x in entry)
            ):
                out[i, j] = complex(entry[0], entry[1])
            else:
                raise ValueError(f"bad matrix entry at ({i}, {j}): {entry!r}")
    return out


def problem_from_dict(obj: dict) -> tuple[BlockProblem, tuple[float, float] | None]:
    """Decode {"A": ..., "B": ..., "C": ..., "gap": [alpha, beta]?}; validates shapes."""
    if not isinstance(obj, dict):
        raise ValueError("problem JSON must be an object")
    missing = [k for k in ("A", "B", "C") if k not in obj]
    if missing:
        raise ValueError(f"problem JSON lacks keys: {', '.join(missing)}")
    p = BlockProblem(
        A=matrix_from_json(obj["A"]),
        B=matrix_from_json(obj["B"]),
        C=matrix_from_json(obj["C"]),
    )
    gap = obj.get("gap")
    if gap is None:
        return p, None
    if (
        not isinstance(gap, list)
        or len(gap) != 2
        or not all(isinstance(x, (int, float)) for x in gap)
    ):
        raise ValueError('"gap" must be [alpha, beta]')
    return p, (float(gap[0]), float(gap[1]))


def problem_to_dict(p: BlockProblem, gap: tuple[float, float] | None = None) -> dict:
    out = {"A": matrix_to_json(p.A), "B": matrix_to_json(p.B), "C": matrix_to_json(p.C)}
    if gap is not None:
        out["gap"] = [clean_number(gap[0]), clean_number(gap[1])]
    return out


def clean_number(x):
    """Floats fit for JSON: NaN and infinities become None."""
    x = float(x)
    return x if math.isfinite(x) else None


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "theorem": cert.theorem,
        "hypothesis_ok": cert.hypothesis_ok,
        "bound_value": clean_number(cert.bound_value),
        "observed_value": clean_number(cert.observed_value),
        "margin": clean_number(cert.margin),
        "passed": cert.passed,
        "details": {
            k: (clean_number(v) if isinstance(v, float) else v)
            for k, v in sorted(cert.details.items())
        },
    }


def solution_to_dict(sol: RiccatiSolution) -> dict:
    return {
        "method": sol.method,
        "x_norm": clean_number(sol.x_norm),
        "residual": clean_number(sol.residual),
        "X": matrix_to_json(sol.X),
        "Z": matrix_to_json(sol.Z),
        "Zhat": matrix_to_json(sol.Zhat),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
