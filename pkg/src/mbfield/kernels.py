"""Exact covariance kernels for four Gaussian random-field families.

Families
    levy  isotropic field, one Hurst scalar:      c(2H) (||s||^2H + ||t||^2H - ||t-s||^2H)
    fbs   anisotropic sheet, one Hurst per axis:  prod_i c(2H_i)(s_i^2Hi + t_i^2Hi - |t_i-s_i|^2Hi)
    mbf   isotropic, H a function of position:    c(x) (||s||^x + ||t||^x - ||t-s||^x),  x = H(s)+H(t)
    mbs   anisotropic, one H function per axis:   per-axis product of the 1D mbf factors

The prefactor c depends on the normalization mode: "unit" uses the constant
1/2, "paperd" uses the quadrature factor from :mod:`.special` evaluated at
the exponent (for mbf/mbs the factor is intrinsic to the family and "paperd"
is the default; levy/fbs default to "unit").  Powers 0^x with x > 0 evaluate
to 0, so lattices touching the origin are safe.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.spatial.distance import cdist

from .geometry import Box, GridSpec, Point, as_point
from .hurst import HurstFunction
from .special import HURST_MAX, HURST_MIN, get_table

FAMILIES = ("levy", "fbs", "mbf", "mbs")
NORMALIZATIONS = ("unit", "paperd")

# Kernel evaluation interpolates the normalization factor on a denser mesh
# than the default cached table: spline error at the default density, scaled
# by large lattice sizes, can push Gram matrices indefinite beyond the
# synthesis jitter budget.
_EVAL_MESH_POINTS = 2048


def _table(dimension: int):
    return get_table(dimension, points=_EVAL_MESH_POINTS)


def _check_scalar_h(h: float) -> float:
    h = float(h)
    if not (HURST_MIN <= h <= HURST_MAX):
        raise ValueError(f"Hurst value {h} outside [{HURST_MIN}, {HURST_MAX}]")
    return h


@dataclass(frozen=True, eq=False)
class KernelModel:
    """Tagged covariance family with its Hurst data and normalization mode."""

    family: str
    dimension: int
    hurst: object
    normalization: Optional[str] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.normalization is None:
            default = "unit" if self.family in ("levy", "fbs") else "paperd"
            object.__setattr__(self, "normalization", default)
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.family == "levy":
            object.__setattr__(self, "hurst", _check_scalar_h(self.hurst))
        elif self.family == "fbs":
            hs = tuple(_check_scalar_h(h) for h in np.atleast_1d(self.hurst))
            if len(hs) != self.dimension:
                raise ValueError("fbs needs one Hurst value per axis")
            object.__setattr__(self, "hurst", hs)
        elif self.family == "mbf":
            if not isinstance(self.hurst, HurstFunction):
                raise TypeError("mbf needs a HurstFunction")
        else:  # mbs
            hs = tuple(self.hurst)
            if len(hs) != self.dimension or not all(
                isinstance(h, HurstFunction) for h in hs
            ):
                raise TypeError("mbs needs one HurstFunction per axis")
            object.__setattr__(self, "hurst", hs)

    # -- prefactor ----------------------------------------------------------
    def _pref(self, x, dimension: int):
        """Normalization prefactor at exponent x (scalar or array)."""
        if self.normalization == "unit":
            return 0.5 if np.isscalar(x) else np.full(np.shape(x), 0.5)
        return _table(dimension).value(x)

    # -- scalar evaluation ----------------------------------------------------
    def cov(self, s: Point, t: Point) -> float:
        """Covariance E[X_s X_t]."""
        sa = np.asarray(as_point(s), dtype=float)
        ta = np.asarray(as_point(t), dtype=float)
        if sa.size != self.dimension or ta.size != self.dimension:
            raise ValueError("point dimension mismatch")
        if self.family == "levy":
            x = 2.0 * self.hurst
            ns, nt, d = (
                np.linalg.norm(sa),
                np.linalg.norm(ta),
                np.linalg.norm(ta - sa),
            )
            return float(self._pref(x, self.dimension) * (ns**x + nt**x - d**x))
        if self.family == "fbs":
            out = 1.0
            for i, h in enumerate(self.hurst):
                x = 2.0 * h
                out *= self._pref(x, 1) * (
                    sa[i] ** x + ta[i] ** x - abs(ta[i] - sa[i]) ** x
                )
            return float(out)
        if self.family == "mbf":
            x = self.hurst(tuple(sa)) + self.hurst(tuple(ta))
            ns, nt, d = (
                np.linalg.norm(sa),
                np.linalg.norm(ta),
                np.linalg.norm(ta - sa),
            )
            return float(self._pref(x, self.dimension) * (ns**x + nt**x - d**x))
        out = 1.0
        for m, hm in enumerate(self.hurst):
            x = hm(tuple(sa)) + hm(tuple(ta))
            out *= self._pref(x, 1) * (
                sa[m] ** x + ta[m] ** x - abs(ta[m] - sa[m]) ** x
            )
        return float(out)

    def variance(self, t: Point) -> float:
        return self.cov(t, t)

    # -- vectorized Gram matrix ----------------------------------------------
    def cov_matrix(self, pts: np.ndarray) -> np.ndarray:
        """Gram matrix C[i, j] = cov(p_i, p_j) for points of shape (n, N)."""
        pts = np.asarray(pts, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.dimension:
            raise ValueError("points must have shape (n, dimension)")
        if self.family == "levy":
            x = 2.0 * self.hurst
            ns = np.linalg.norm(pts, axis=1) ** x
            d = cdist(pts, pts) ** x
            return self._pref(x, self.dimension) * (ns[:, None] + ns[None, :] - d)
        if self.family == "fbs":
            out = np.ones((pts.shape[0], pts.shape[0]))
            for i, h in enumerate(self.hurst):
                x = 2.0 * h
                c = pts[:, i] ** x
                d = np.abs(pts[:, i][:, None] - pts[:, i][None, :]) ** x
                out *= self._pref(x, 1) * (c[:, None] + c[None, :] - d)
            return out
        if self.family == "mbf":
            h = self.hurst.values(pts)
            x = h[:, None] + h[None, :]
            ns = np.linalg.norm(pts, axis=1)
            d = cdist(pts, pts)
            body = ns[:, None] ** x + ns[None, :] ** x - d**x
            return self._pref(x, self.dimension) * body
        out = np.ones((pts.shape[0], pts.shape[0]))
        for m, hm in enumerate(self.hurst):
            h = hm.values(pts)
            x = h[:, None] + h[None, :]
            c = pts[:, m]
            d = np.abs(c[:, None] - c[None, :]) ** x
            body = c[:, None] ** x + c[None, :] ** x - d
            out *= self._pref(x, 1) * body
        return out

    # -- per-point Hurst helpers ----------------------------------------------
    def hurst_at(self, t: Point) -> np.ndarray:
        """Hurst value(s) at t, one entry per axis family (length 1 or N)."""
        if self.family == "levy":
            return np.array([self.hurst])
        if self.family == "fbs":
            return np.asarray(self.hurst)
        if self.family == "mbf":
            return np.array([self.hurst(t)])
        return np.array([hm(t) for hm in self.hurst])

    def min_hurst_at(self, t: Point) -> float:
        return float(np.min(self.hurst_at(t)))

    # -- identity -------------------------------------------------------------
    def descriptor(self) -> dict:
        if self.family == "levy":
            hdesc = self.hurst
        elif self.family == "fbs":
            hdesc = list(self.hurst)
        elif self.family == "mbf":
            hdesc = self.hurst.descriptor()
        else:
            hdesc = [hm.descriptor() for hm in self.hurst]
        return {
            "family": self.family,
            "dimension": self.dimension,
            "normalization": self.normalization,
            "hurst": hdesc,
        }

    def model_hash(self) -> str:
        blob = json.dumps(self.descriptor(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


# -- increments ---------------------------------------------------------------

def sq_increment(model: KernelModel, s: Point, t: Point) -> float:
    """Exact second moment E[(X_t - X_s)^2]."""
    return model.cov(s, s) + model.cov(t, t) - 2.0 * model.cov(s, t)


def increment_cov(model: KernelModel, box_a: Box, box_b: Box) -> float:
    """E of the product of the two rectangular increments (corner bilinear form)."""
    total = 0.0
    for sign_p, p in box_a.corners():
        for sign_q, q in box_b.corners():
            total += sign_p * sign_q * model.cov(p, q)
    return total


# -- the power-law building block and its curvature ----------------------------

def phi(x: float, y: float, dimension: int) -> float:
    """D(x) * y^x with the quadrature factor D of the given dimension."""
    if y < 0.0:
        raise ValueError("y must be non-negative")
    if y == 0.0:
        return 0.0
    return float(_table(dimension).value(x) * y**x)


def phi_xx(x: float, y: float, dimension: int) -> float:
    """Second derivative of phi in its exponent argument.

    Equals y^x (D ln^2 y + 2 D' ln y + D''), the y^x-weighted integral of
    (ln y - ln||u||)^2 against the positive kernel integrand, hence >= 0.
    """
    if y < 0.0:
        raise ValueError("y must be non-negative")
    if y == 0.0:
        return 0.0
    table = _table(dimension)
    ly = math.log(y)
    return float(
        y**x
        * (
            table.value(x, 0) * ly**2
            + 2.0 * table.value(x, 1) * ly
            + table.value(x, 2)
        )
    )


def phi_big(t: Point, h: float, dimension: Optional[int] = None) -> float:
    """Curvature factor phi_xx(2h, ||t||); errors at t = 0 (log singularity)."""
    ta = np.asarray(as_point(t), dtype=float)
    y = float(np.linalg.norm(ta))
    if y == 0.0:
        raise ValueError("curvature factor is singular at the origin")
    return phi_xx(2.0 * h, y, dimension if dimension is not None else ta.size)


def _phi_xx_vec(x: np.ndarray, y: np.ndarray, dimension: int) -> np.ndarray:
    table = _table(dimension)
    ly = np.log(y)
    return y**x * (
        table.value(x, 0) * ly**2 + 2.0 * table.value(x, 1) * ly + table.value(x, 2)
    )


# -- two-sided moment bounds ----------------------------------------------------

@dataclass(frozen=True)
class BoundConstants:
    """Constants of the two-sided second-moment bounds on a box.

    k1/l2 are the inf/sup of t -> D[2H(t)]; k2/l1 the inf/sup of the
    curvature factor; K/L are the smallest lattice-feasible constants of
    E[(X_t-X_s)^2] <= K ||t-s||^(2H(t)) + L (H(t)-H(s))^2, inflated 10%.
    """

    box: GridSpec
    k1: float
    k2: float
    l1: float
    l2: float
    K: float
    L: float

    def __post_init__(self):
        for name in ("k1", "k2", "l1", "l2", "K", "L"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"constant {name} must be strictly positive")
        if self.k1 > self.l2 or self.k2 > self.l1:
            raise ValueError("inf constants cannot exceed their sup counterparts")


def _hurst_columns(model: KernelModel, pts: np.ndarray) -> np.ndarray:
    """Per-axis Hurst values on the lattice, shape (n, axes)."""
    if model.family == "mbf":
        return model.hurst.values(pts)[:, None]
    if model.family == "mbs":
        return np.stack([hm.values(pts) for hm in model.hurst], axis=1)
    raise ValueError("bound constants are defined for mbf and mbs models")


def bound_constants(model: KernelModel, box: GridSpec) -> BoundConstants:
    """Empirical bound constants over the lattice of ``box``."""
    pts = box.points()
    hcols = _hurst_columns(model, pts)
    if model.family == "mbf":
        ns = np.linalg.norm(pts, axis=1)
        if np.any(ns == 0.0):
            raise ValueError("box contains the origin; curvature factor singular")
        x = 2.0 * hcols[:, 0]
        dvals = _table(model.dimension).value(x)
        phis = _phi_xx_vec(x, ns, model.dimension)
    else:
        if np.any(pts == 0.0):
            raise ValueError("box touches a coordinate plane; factor singular")
        table1 = _table(1)
        x = 2.0 * hcols  # (n, N)
        d_axis = np.stack([table1.value(x[:, m]) for m in range(x.shape[1])], axis=1)
        p_axis = np.stack(
            [table1.value(x[:, m]) * pts[:, m] ** x[:, m] for m in range(x.shape[1])],
            axis=1,
        )
        c_axis = np.stack(
            [_phi_xx_vec(x[:, m], pts[:, m], 1) for m in range(x.shape[1])], axis=1
        )
        dvals = d_axis.prod(axis=1)
        # product-rule curvature: vary one axis exponent at a time
        prod_all = p_axis.prod(axis=1)
        phis = (c_axis * (prod_all[:, None] / p_axis)).sum(axis=1)

    k1, l2 = float(dvals.min()), float(dvals.max())
    k2, l1 = float(phis.min()), float(phis.max())

    # smallest feasible K, L for the upper bound over all ordered lattice pairs
    gram = model.cov_matrix(pts)
    diag = np.diag(gram)
    sq = diag[:, None] + diag[None, :] - 2.0 * gram
    dist = cdist(pts, pts)
    ht = hcols[:, 0] if model.family == "mbf" else hcols.min(axis=1)
    a = dist ** (2.0 * ht[None, :])
    b = ((hcols[:, None, :] - hcols[None, :, :]) ** 2).sum(axis=2)
    mask = ~np.eye(pts.shape[0], dtype=bool)
    res = linprog(
        c=[1.0, 1.0],
        A_ub=np.stack([-a[mask], -b[mask]], axis=1),
        b_ub=-sq[mask],
        bounds=[(1e-12, None), (1e-12, None)],
        method="highs",
    )
    if not res.success:
        raise RuntimeError(f"bound fit failed: {res.message}")
    K, L = 1.1 * res.x[0], 1.1 * res.x[1]
    return BoundConstants(box=box, k1=k1, k2=k2, l1=l1, l2=l2, K=K, L=L)


@dataclass(frozen=True)
class RatioReport:
    """Sup of E[(X_t-X_s)^2] / ||t-s||^(2 (beta ^ H(t))) over lattice pairs."""

    sup_ratio: float
    worst_pair: tuple[Point, Point]
    beta: float


def moment_bound_check(model: KernelModel, box: GridSpec, beta: float) -> RatioReport:
    pts = box.points()
    gram = model.cov_matrix(pts)
    diag = np.diag(gram)
    sq = diag[:, None] + diag[None, :] - 2.0 * gram
    dist = cdist(pts, pts)
    if model.family == "levy":
        ht = np.full(pts.shape[0], model.hurst)
    elif model.family == "fbs":
        ht = np.full(pts.shape[0], min(model.hurst))
    else:
        ht = _hurst_columns(model, pts).min(axis=1)
    expo = 2.0 * np.minimum(beta, ht)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = sq / dist ** expo[None, :]
    np.fill_diagonal(ratio, -np.inf)
    i, j = np.unravel_index(np.argmax(ratio), ratio.shape)
    return RatioReport(
        sup_ratio=float(ratio[i, j]),
        worst_pair=(tuple(pts[i]), tuple(pts[j])),
        beta=float(beta),
    )
