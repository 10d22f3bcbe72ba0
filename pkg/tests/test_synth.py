"""Exact lattice synthesis: factorization, determinism, moment checks."""

import numpy as np
import pytest

from mbfield.geometry import Box, GridSpec
from mbfield.hurst import Constant, SmoothSine
from mbfield.kernels import KernelModel, increment_cov
from mbfield.synth import (
    CovMatrix,
    FactorizationError,
    build_cov,
    factor_psd,
    sample,
    sample_increments,
    synthesize,
    synthesize_points,
)


def test_zero_row_at_origin():
    spec = GridSpec((0.0,), (1.0,), (5,))
    cov = build_cov(KernelModel("levy", 1, 0.6), spec)
    assert np.all(cov.matrix[0] == 0.0)
    assert np.all(cov.matrix[:, 0] == 0.0)


def test_diagonal_is_variance():
    spec = GridSpec((0.2, 0.2), (1.0, 1.0), (3, 3))
    m = KernelModel("levy", 2, 0.7)
    cov = build_cov(m, spec)
    for i, p in enumerate(spec.points()):
        assert cov.matrix[i, i] == pytest.approx(
            np.linalg.norm(p) ** 1.4, rel=1e-12
        )


def test_brownian_min_matrix():
    spec = GridSpec((1.0,), (3.0,), (3,))
    cov = build_cov(KernelModel("levy", 1, 0.5), spec)
    expect = np.minimum.outer([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert np.allclose(cov.matrix, expect, rtol=1e-12)
    lower, annotated = factor_psd(cov)
    recon = lower @ lower.T - (cov.matrix + annotated.jitter * np.eye(3))
    assert np.linalg.norm(recon) < 1e-12


def test_lattice_cap():
    spec = GridSpec((0.0,), (1.0,), (5000,))
    with pytest.raises(ValueError, match="cap"):
        build_cov(KernelModel("levy", 1, 0.5), spec)


def test_identity_factor_no_jitter():
    spec = GridSpec((0.0,), (1.0,), (4,))
    cov = CovMatrix(spec=spec, matrix=np.eye(4))
    lower, annotated = factor_psd(cov)
    assert np.allclose(lower, np.eye(4))
    assert annotated.jitter == 0.0


def test_indefinite_matrix_error_path():
    mat = np.diag([1.0, 1.0, -0.1])
    with pytest.raises(FactorizationError) as exc:
        factor_psd(CovMatrix(spec=None, matrix=mat))
    assert exc.value.min_eigenvalue == pytest.approx(-0.1, rel=1e-9)


def test_bitwise_determinism():
    spec = GridSpec((0.0,), (1.0,), (32,))
    m = KernelModel("levy", 1, 0.6)
    s1, _ = synthesize(m, spec, seed=42, replicates=3)
    s2, _ = synthesize(m, spec, seed=42, replicates=3)
    for a, b in zip(s1, s2):
        assert np.array_equal(a.values, b.values)
        assert a.model_hash == b.model_hash
    s3, _ = synthesize(m, spec, seed=43, replicates=1)
    assert not np.array_equal(s1[0].values, s3[0].values)


def test_replicates_differ_and_are_uncorrelated():
    spec = GridSpec((0.5,), (1.5,), (4,))
    m = KernelModel("levy", 1, 0.5)
    samples, _ = synthesize(m, spec, seed=9, replicates=2000)
    vals = np.stack([s.values for s in samples])
    assert not np.array_equal(vals[0], vals[1])
    # consecutive-replicate correlation at a fixed point
    x = vals[:-1, 2]
    y = vals[1:, 2]
    rho = np.corrcoef(x, y)[0, 1]
    assert abs(rho) < 4.0 / np.sqrt(len(x))


def test_mean_and_covariance_recovery():
    spec = GridSpec((0.25,), (1.0,), (4,))
    m = KernelModel("levy", 1, 0.7)
    cov = build_cov(m, spec)
    lower, annotated = factor_psd(cov)
    samples = sample(lower, annotated, m, seed=1, replicates=4000)
    vals = np.stack([s.values for s in samples])
    r = vals.shape[0]
    target = annotated.matrix + annotated.jitter * np.eye(4)
    # means
    for i in range(4):
        se = np.sqrt(target[i, i] / r)
        assert abs(vals[:, i].mean()) < 4 * se
    # covariance entries
    emp = vals.T @ vals / r
    for i in range(4):
        for j in range(4):
            se = np.sqrt((target[i, i] * target[j, j] + target[i, j] ** 2) / r)
            assert abs(emp[i, j] - target[i, j]) < 4 * se


def test_sample_increments_degenerate_zero():
    spec = GridSpec((0.0, 0.0), (1.0, 1.0), (3, 3))
    m = KernelModel("fbs", 2, (0.5, 0.5))
    samples, _ = synthesize(m, spec, seed=2, replicates=5)
    box = Box((0.5, 0.5), (0.5, 0.5))
    out = sample_increments(samples, [box])
    assert np.all(out == 0.0)


def test_increment_variance_matches_analytic():
    spec = GridSpec((0.0, 0.0), (1.0, 1.0), (3, 3))
    m = KernelModel("fbs", 2, (0.3, 0.7))
    samples, _ = synthesize(m, spec, seed=4, replicates=3000)
    box = Box((0.0, 0.0), (1.0, 1.0))
    incs = sample_increments(samples, [box])[:, 0]
    analytic = increment_cov(m, box, box)
    r = incs.size
    se = analytic * np.sqrt(2.0 / r)  # var of a chi^2 mean
    assert abs(incs.var(ddof=1) - analytic) < 4 * se


def test_shifted_increment_variances_agree():
    spec = GridSpec((0.0,), (2.0,), (9,))
    m = KernelModel("levy", 1, 0.6)
    samples, _ = synthesize(m, spec, seed=6, replicates=3000)
    b1 = Box((0.0,), (0.5,))
    b2 = Box((1.0,), (1.5,))
    incs = sample_increments(samples, [b1, b2])
    v1, v2 = incs[:, 0].var(ddof=1), incs[:, 1].var(ddof=1)
    analytic = increment_cov(m, b1, b1)
    se = analytic * np.sqrt(2.0 / incs.shape[0])
    assert abs(v1 - v2) < 8 * se  # joint band for two independent estimates


def test_synthesize_points_matches_full_lattice():
    spec = GridSpec((0.25,), (1.0,), (16,))
    dom = spec
    m = KernelModel("mbf", 1, SmoothSine(0.5, 0.1, 2.0, dom))
    full, _ = synthesize(m, spec, seed=77, replicates=2)
    sub = synthesize_points(m, spec.points(), seed=77, replicates=2)
    assert np.allclose(np.stack([s.values for s in full]), sub, atol=1e-12)


@pytest.mark.parametrize("family", ["levy", "fbs", "mbf", "mbs"])
def test_all_families_synthesize(family):
    spec = GridSpec((0.2, 0.2), (1.0, 1.0), (4, 4))
    if family == "levy":
        m = KernelModel(family, 2, 0.6)
    elif family == "fbs":
        m = KernelModel(family, 2, (0.3, 0.7))
    elif family == "mbf":
        m = KernelModel(family, 2, SmoothSine(0.5, 0.1, 2.0, spec))
    else:
        m = KernelModel(family, 2, (Constant(0.4, spec), Constant(0.7, spec)))
    samples, cov = synthesize(m, spec, seed=1, replicates=2)
    assert len(samples) == 2
    assert samples[0].values.shape == (16,)
    assert cov.jitter <= 1e-6 * np.mean(np.diag(cov.matrix))
