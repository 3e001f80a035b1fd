"""Block problem container, gap discovery, and the gap function M."""

import numpy as np
import pytest

import riccatilab as rl
from riccatilab.block import herglotz_batch
from riccatilab.errors import (
    DimensionMismatch,
    LambdaOnSpectrum,
    LambdaOnSpectrumOfC,
    NonHermitianInput,
)
from riccatilab.linalg import TOL_SPEC, operator_norm
from riccatilab.rng import SplitMix64


def small_problem():
    # 1x2 sharpness instance, d = 1, b = 0.5
    return rl.example_problem(1.0, 0.5)


def test_block_problem_validates_shapes():
    with pytest.raises(DimensionMismatch):
        rl.BlockProblem(np.eye(2), np.ones((3, 2)), np.eye(2))


def test_block_problem_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        rl.BlockProblem(np.array([[0.0, 1.0], [0.0, 0.0]]), np.zeros((2, 2)), np.eye(2))


def test_block_problem_rejects_nonfinite():
    with pytest.raises(ValueError):
        rl.BlockProblem(np.array([[np.nan]]), np.zeros((1, 1)), np.eye(1))


def test_block_problem_arrays_are_frozen():
    p = small_problem()
    with pytest.raises(ValueError):
        p.A[0, 0] = 5.0


def test_assemble_H_is_hermitian():
    p = small_problem()
    H = rl.assemble_H(p)
    assert H.shape == (3, 3)
    assert operator_norm(H - H.conj().T) == 0.0


def test_find_gaps_simple():
    gaps = rl.find_gaps(np.diag([0.0, 1.0, 3.0]))
    finite = [g for g in gaps if g.is_finite]
    assert [(g.alpha, g.beta) for g in finite] == [(0.0, 1.0), (1.0, 3.0)]
    rays = [g for g in gaps if not g.is_finite]
    assert len(rays) == 2


def test_find_gaps_merges_near_ties():
    # 1.0 and 1.0 + eps are one spectral point at tol_spec resolution
    gaps = rl.find_gaps(np.diag([0.0, 1.0, 1.0 + 1e-12, 3.0]))
    finite = [g for g in gaps if g.is_finite]
    assert len(finite) == 2


def test_find_gaps_tile_the_hull():
    rng = SplitMix64(21)
    for _ in range(5):
        vals = np.sort([rng.normal() * 3 for _ in range(6)])
        C = np.diag(vals)
        finite = [g for g in rl.find_gaps(C) if g.is_finite]
        # closures of the finite gaps cover [min, max] without overlap
        total = sum(g.length for g in finite)
        assert total == pytest.approx(vals[-1] - vals[0], abs=1e-9)
        for g1, g2 in zip(finite, finite[1:]):
            assert g1.beta <= g2.alpha + 1e-12


def test_select_gap_default_uses_sigma_A():
    p = small_problem()
    gap = rl.select_gap(p)
    assert (gap.alpha, gap.beta) == (-1.0, 1.0)
    assert gap.d == pytest.approx(1.0)


def test_select_gap_rejects_point_on_spectrum():
    p = small_problem()
    with pytest.raises(LambdaOnSpectrumOfC):
        rl.select_gap(p, 1.0)


def test_spectral_gap_midpoint_and_contains():
    g = rl.SpectralGap(-1.0, 3.0)
    assert g.midpoint == 1.0
    assert g.contains(2.9)
    assert not g.contains(2.9, margin=0.2)
    assert not rl.SpectralGap(-np.inf, 0.0).is_finite


def test_herglotz_M_value():
    p = small_problem()
    # M(0) = -A + B C^{-1} B* = 0 + (0.125 - 0.125) ... worked by hand
    s = rl.herglotz_M(p, 0.0)
    expected = -p.A + p.B @ np.linalg.inv(p.C) @ p.B.conj().T
    assert np.allclose(s.M, expected, atol=1e-14)


def test_herglotz_M_rejects_lambda_on_sigma_C():
    p = small_problem()
    with pytest.raises(LambdaOnSpectrumOfC):
        rl.herglotz_M(p, 1.0 + 1e-12)


def test_herglotz_batch_matches_single():
    p = small_problem()
    lams = np.array([0.1, 0.5j, -0.3 + 0.2j])
    batch = herglotz_batch(p, lams)
    for k, lam in enumerate(lams):
        assert np.allclose(batch[k], rl.herglotz_M(p, complex(lam)).M, atol=1e-13)


def test_herglotz_imaginary_part_psd_upper_half_plane():
    # the defining property: Im M(lambda) >= 0 whenever Im lambda > 0
    spec = rl.GenSpec(seed=5150, n_A=3, n_C=6, gap=(-1.0, 1.0), d_target=0.4, b_ratio=0.7)
    p = rl.generate(spec)
    rng = SplitMix64(3)
    for _ in range(20):
        lam = complex(3 * rng.normal(), 0.05 + 2 * rng.uniform())
        M = rl.herglotz_M(p, lam).M
        im = (M - M.conj().T) / 2j
        assert np.linalg.eigvalsh(im).min() >= -1e-11 * (1 + operator_norm(M))


def test_herglotz_derivative_dominates_identity_on_gap():
    # d/dlambda M >= I on the gap; checked as a centered difference
    spec = rl.GenSpec(seed=5151, n_A=2, n_C=5, gap=(-1.0, 1.0), d_target=0.35, b_ratio=0.6)
    p = rl.generate(spec)
    h = 1e-6
    for lam in np.linspace(-0.5, 0.5, 7):
        Mp = rl.herglotz_M(p, lam + h).M
        Mm = rl.herglotz_M(p, lam - h).M
        deriv = (Mp - Mm).real / (2 * h)
        assert np.linalg.eigvalsh(deriv).min() >= 1.0 - 1e-6


def test_resolvent_matches_direct_inverse():
    spec = rl.GenSpec(seed=5152, n_A=3, n_C=4, gap=(-1.0, 1.0), d_target=0.4, b_ratio=0.5)
    p = rl.generate(spec)
    H = rl.assemble_H(p)
    eigs = np.linalg.eigvalsh(H)
    rng = SplitMix64(17)
    checked = 0
    while checked < 12:
        lam = complex(4 * rng.normal(), 4 * rng.normal())
        if min(abs(eigs - lam)) < 0.1 or min(abs(np.linalg.eigvalsh(p.C) - lam)) < 0.1:
            continue
        R = rl.resolvent_H(p, lam)
        direct = np.linalg.inv(H - lam * np.eye(H.shape[0]))
        assert operator_norm(R - direct) <= 1e-8 * operator_norm(direct)
        checked += 1


def test_resolvent_rejects_lambda_on_spectrum():
    p = small_problem()
    H = rl.assemble_H(p)
    lam = float(np.linalg.eigvalsh(H)[0])
    with pytest.raises(LambdaOnSpectrum):
        rl.resolvent_H(p, lam)


def test_spectrum_identity_on_generated_instance():
    spec = rl.GenSpec(seed=5153, n_A=2, n_C=6, gap=(-1.0, 1.0), d_target=0.4, b_ratio=0.6)
    p = rl.generate(spec)
    gap = rl.select_gap(p, 0.0)
    grid = np.linspace(gap.alpha + 0.05, gap.beta - 0.05, 40)
    result = rl.spectrum_identity_check(p, gap, grid)
    assert result
    assert result.ok
    assert result.mismatches == []
    # the gap eigenvalues of H are appended to the grid, so at least those
    # were classified as singular points of M
    assert result.checked > 0


def test_spectrum_identity_skips_ambiguous_points():
    p = small_problem()
    gap = rl.select_gap(p, 0.0)
    H = rl.assemble_H(p)
    inside = [x for x in np.linalg.eigvalsh(H) if gap.contains(x)]
    # a point in the skip annulus around an eigenvalue: close enough to be
    # ambiguous, too far to demand singularity
    grid = np.array([inside[0] + 10 * TOL_SPEC * (1 + operator_norm(H))])
    result = rl.spectrum_identity_check(p, gap, grid)
    assert result.ok
    assert result.skipped >= 1
