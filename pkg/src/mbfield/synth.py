"""Exact Gaussian synthesis on lattices by dense PSD factorization.

The sampler is exact in law: the covariance of the output vector equals the
kernel Gram matrix plus the (tiny, reported) diagonal jitter.  Replicates
use counter-based substreams keyed by (seed, replicate index) and a
rejection-free inverse-CDF normal transform, so every output bit is a pure
function of (seed, replicate, model, lattice).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import ndtri

from .geometry import Box, GridSpec, Point, rect_increment
from .kernels import KernelModel

LATTICE_CAP = 4096

_JITTER_START_REL = 1e-12
_JITTER_MAX_REL = 1e-6


class FactorizationError(RuntimeError):
    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True)
class CovMatrix:
    """Symmetrized kernel Gram matrix on a lattice, with applied jitter."""

    spec: GridSpec
    matrix: np.ndarray
    jitter: float = 0.0


@dataclass(frozen=True)
class FieldSample:
    """One realization of the field on a lattice, with its seed lineage."""

    spec: GridSpec
    values: np.ndarray  # flat, lattice order
    seed: int
    replicate: int
    model_hash: str

    def value_map(self) -> dict[Point, float]:
        pts = self.spec.points()
        return {tuple(p): float(v) for p, v in zip(pts, self.values)}


def build_cov(model: KernelModel, spec: GridSpec, cap: int = LATTICE_CAP) -> CovMatrix:
    """Assemble the Gram matrix; symmetry enforced by averaging."""
    if spec.size > cap:
        raise ValueError(
            f"lattice has {spec.size} points, above the cap {cap}; "
            "reduce the resolution"
        )
    mat = model.cov_matrix(spec.points())
    mat = 0.5 * (mat + mat.T)
    return CovMatrix(spec=spec, matrix=mat)


def factor_psd(cov: CovMatrix) -> tuple[np.ndarray, CovMatrix]:
    """Lower-triangular L with L L^T = C + jitter I.

    Jitter escalates geometrically from 1e-12 x (mean diagonal) by x10 up to
    1e-6 x (mean diagonal); zero jitter is always tried first.  Returns the
    factor and the CovMatrix annotated with the jitter actually applied.
    """
    c = cov.matrix
    mean_diag = float(np.mean(np.diag(c)))
    scale = mean_diag if mean_diag > 0.0 else 1.0
    jitters = [0.0]
    j = _JITTER_START_REL * scale
    while j <= _JITTER_MAX_REL * scale * (1.0 + 1e-9):
        jitters.append(j)
        j *= 10.0
    norm_c = np.linalg.norm(c)
    for jit in jitters:
        try:
            lower = np.linalg.cholesky(c + jit * np.eye(c.shape[0]))
        except np.linalg.LinAlgError:
            continue
        recon = np.linalg.norm(lower @ lower.T - (c + jit * np.eye(c.shape[0])))
        if norm_c > 0.0 and recon / norm_c > 1e-8:
            continue
        return lower, CovMatrix(spec=cov.spec, matrix=cov.matrix, jitter=jit)
    min_eig = float(np.linalg.eigvalsh(c)[0])
    raise FactorizationError(
        f"factorization failed at maximum jitter; most negative eigenvalue "
        f"estimate {min_eig:.6e}",
        min_eigenvalue=min_eig,
    )


def _substream_normals(seed: int, replicate: int, count: int) -> np.ndarray:
    """Deterministic standard normals from a counter-based substream.

    The generator is keyed by (seed, replicate); uniforms are mapped through
    the inverse normal CDF, so no rejection loop can desynchronize streams.
    """
    gen = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), replicate]))
    u = (gen.integers(0, 2**53, size=count).astype(np.float64) + 0.5) / 2**53
    return ndtri(u)


def sample(
    lower: np.ndarray,
    cov: CovMatrix,
    model: KernelModel,
    seed: int,
    replicates: int,
) -> list[FieldSample]:
    """Draw replicates X = L z with independent per-replicate substreams."""
    mh = model.model_hash()
    # points with exactly zero kernel variance (e.g. the origin) stay exactly
    # zero; the jitter is a factorization device, not part of their law
    zero_var = np.diag(cov.matrix) == 0.0
    out = []
    for r in range(replicates):
        z = _substream_normals(seed, r, lower.shape[0])
        values = lower @ z
        values[zero_var] = 0.0
        out.append(
            FieldSample(
                spec=cov.spec,
                values=values,
                seed=seed,
                replicate=r,
                model_hash=mh,
            )
        )
    return out


def synthesize(
    model: KernelModel, spec: GridSpec, seed: int, replicates: int
) -> tuple[list[FieldSample], CovMatrix]:
    """Convenience pipeline: build, factor, sample."""
    cov = build_cov(model, spec)
    lower, cov = factor_psd(cov)
    return sample(lower, cov, model, seed, replicates), cov


def synthesize_points(
    model: KernelModel,
    pts: np.ndarray,
    seed: int,
    replicates: int,
    cap: int = LATTICE_CAP,
) -> np.ndarray:
    """Exact synthesis on an arbitrary point set; returns values (R, n).

    Used for sub-lattices (e.g. rays through a point of a large grid) whose
    exact joint law is the kernel Gram matrix restricted to those points.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.shape[0] > cap:
        raise ValueError(f"{pts.shape[0]} points exceed the cap {cap}")
    mat = model.cov_matrix(pts)
    mat = 0.5 * (mat + mat.T)
    lower, _ = factor_psd(CovMatrix(spec=None, matrix=mat))
    zero_var = np.diag(mat) == 0.0
    out = np.stack(
        [lower @ _substream_normals(seed, r, pts.shape[0]) for r in range(replicates)]
    )
    out[:, zero_var] = 0.0
    return out


def sample_increments(
    samples: Sequence[FieldSample], boxes: Sequence[Box]
) -> np.ndarray:
    """Rectangular increments per replicate; shape (replicates, boxes)."""
    out = np.zeros((len(samples), len(boxes)))
    for i, s in enumerate(samples):
        vmap = s.value_map()
        for j, box in enumerate(boxes):
            out[i, j] = rect_increment(vmap, box) if box.corners() else 0.0
    return out
