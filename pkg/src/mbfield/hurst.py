"""Parameter-function families with analytic Hoelder-exponent metadata.

Each family evaluates H(t) on a declared domain box and reports its own
pointwise, local and directional regularity exponents analytically, so the
statistical estimators can be checked against exact ground truth.  The
sentinel ``UNBOUNDED`` (= +inf) encodes "no finite exponent", which makes
min(beta, H) reductions come out automatically for constant H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .geometry import GridSpec, Point, as_point
from .special import HURST_MAX, HURST_MIN

UNBOUNDED = math.inf


@dataclass(frozen=True)
class ExponentMeta:
    """Analytic regularity metadata of a parameter function at a point."""

    pointwise: float
    local: float
    pair_inf: float  # inf over probe pairs (u, v) of the two-point exponent
    directional: Callable[[Point], float]
    gamma: Optional[Callable[[Point, Point], float]]  # None when divergent

    def __post_init__(self):
        if self.local > self.pointwise:
            raise ValueError("local exponent cannot exceed pointwise exponent")


class HurstFunction:
    """Base class: clamped evaluation on a declared domain box."""

    family = "abstract"

    def __init__(self, domain: GridSpec):
        self.domain = domain
        self.clamp = (HURST_MIN, HURST_MAX)

    # -- evaluation ---------------------------------------------------------
    def _raw(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def values(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at points of shape (n, N)."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        lo = np.asarray(self.domain.lower)
        hi = np.asarray(self.domain.upper)
        if np.any(pts < lo - 1e-12) or np.any(pts > hi + 1e-12):
            raise ValueError("point outside the declared domain box")
        return np.clip(self._raw(pts), self.clamp[0], self.clamp[1])

    def __call__(self, t: Point) -> float:
        return float(self.values(np.asarray(as_point(t))[None, :])[0])

    def check_clamp_inactive(self, points_per_axis: int = 64) -> bool:
        """True when clamping never fires on a dense lattice of the domain."""
        dense = GridSpec(
            self.domain.lower,
            self.domain.upper,
            (points_per_axis,) * self.domain.dimension,
        )
        raw = self._raw(dense.points())
        return bool(np.all(raw > self.clamp[0]) and np.all(raw < self.clamp[1]))

    # -- metadata -----------------------------------------------------------
    def meta(self, t0: Point) -> ExponentMeta:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    def _smooth_meta(self, grad: np.ndarray) -> ExponentMeta:
        """Metadata for a C^1 function with gradient ``grad`` at t0."""
        grad = np.asarray(grad, dtype=float)
        if np.allclose(grad, 0.0):
            return ExponentMeta(
                UNBOUNDED, UNBOUNDED, UNBOUNDED,
                directional=lambda u: UNBOUNDED,
                gamma=lambda u, v: 0.0,
            )
        return ExponentMeta(
            1.0, 1.0, 1.0,
            directional=lambda u: 1.0 if abs(float(np.dot(grad, u))) > 0 else UNBOUNDED,
            gamma=lambda u, v: abs(float(np.dot(grad, np.subtract(u, v)))),
        )


class Constant(HurstFunction):
    family = "constant"

    def __init__(self, h: float, domain: GridSpec):
        super().__init__(domain)
        if not (HURST_MIN <= h <= HURST_MAX):
            raise ValueError(f"constant Hurst value {h} outside clamp interval")
        self.h = float(h)

    def _raw(self, pts):
        return np.full(pts.shape[0], self.h)

    def meta(self, t0):
        return ExponentMeta(
            UNBOUNDED, UNBOUNDED, UNBOUNDED,
            directional=lambda u: UNBOUNDED,
            gamma=lambda u, v: 0.0,
        )

    def descriptor(self):
        return {"family": self.family, "h": self.h}


class AffineClamped(HurstFunction):
    family = "affine"

    def __init__(self, gradient: Sequence[float], offset: float, domain: GridSpec):
        super().__init__(domain)
        self.gradient = np.asarray(gradient, dtype=float)
        self.offset = float(offset)

    def _raw(self, pts):
        return self.offset + pts @ self.gradient

    def meta(self, t0):
        return self._smooth_meta(self.gradient)

    def descriptor(self):
        return {
            "family": self.family,
            "gradient": list(self.gradient),
            "offset": self.offset,
        }


class SmoothSine(HurstFunction):
    """H(t) = base + amplitude * sin(frequency * sum(t))."""

    family = "sine"

    def __init__(self, base: float, amplitude: float, frequency: float, domain: GridSpec):
        super().__init__(domain)
        self.base = float(base)
        self.amplitude = float(amplitude)
        self.frequency = float(frequency)

    def _raw(self, pts):
        return self.base + self.amplitude * np.sin(self.frequency * pts.sum(axis=1))

    def meta(self, t0):
        slope = (
            self.amplitude
            * self.frequency
            * math.cos(self.frequency * sum(t0))
        )
        return self._smooth_meta(np.full(len(t0), slope))

    def descriptor(self):
        return {
            "family": self.family,
            "base": self.base,
            "amplitude": self.amplitude,
            "frequency": self.frequency,
        }


class SqrtShifted(HurstFunction):
    """H(t) = base + sqrt(||t - anchor||); exponent 1/2 exactly at the anchor."""

    family = "sqrt"

    def __init__(self, base: float, anchor: Sequence[float], domain: GridSpec):
        super().__init__(domain)
        self.base = float(base)
        self.anchor = np.asarray(anchor, dtype=float)

    def _raw(self, pts):
        return self.base + np.sqrt(
            np.linalg.norm(pts - self.anchor, axis=1)
        )

    def meta(self, t0):
        t0a = np.asarray(t0, dtype=float)
        if np.array_equal(t0a, self.anchor):
            return ExponentMeta(
                0.5, 0.5, 0.5,
                directional=lambda u: 0.5,
                gamma=lambda u, v: abs(
                    math.sqrt(float(np.linalg.norm(u)))
                    - math.sqrt(float(np.linalg.norm(v)))
                ),
            )
        d = t0a - self.anchor
        grad = d / (2.0 * np.linalg.norm(d) ** 1.5)
        return self._smooth_meta(grad)

    def descriptor(self):
        return {"family": self.family, "base": self.base, "anchor": list(self.anchor)}


class WeierstrassLike(HurstFunction):
    """Finite lacunary cosine sum with a controllable target exponent.

    H(t) = base + amplitude * sum_{m=1..terms} lam^(-target*m) cos(lam^m <xi_m, t>)
    with unit directions xi_m cycling the coordinate axes.  The truncated sum
    is smooth but indistinguishable from exponent ``target`` at lattice scale.
    """

    family = "weierstrass"

    def __init__(
        self,
        base: float,
        amplitude: float,
        target: float,
        domain: GridSpec,
        lacunarity: float = 2.0,
        terms: int = 20,
    ):
        super().__init__(domain)
        if lacunarity < 2.0:
            raise ValueError("lacunarity must be >= 2")
        self.base = float(base)
        self.amplitude = float(amplitude)
        self.target = float(target)
        self.lacunarity = float(lacunarity)
        self.terms = int(terms)

    def _raw(self, pts):
        n_axes = pts.shape[1]
        out = np.full(pts.shape[0], self.base)
        for m in range(1, self.terms + 1):
            axis = (m - 1) % n_axes
            out += (
                self.amplitude
                * self.lacunarity ** (-self.target * m)
                * np.cos(self.lacunarity**m * pts[:, axis])
            )
        return out

    def meta(self, t0):
        return ExponentMeta(
            self.target, self.target, self.target,
            directional=lambda u: self.target,
            gamma=None,
        )

    def descriptor(self):
        return {
            "family": self.family,
            "base": self.base,
            "amplitude": self.amplitude,
            "target": self.target,
            "lacunarity": self.lacunarity,
            "terms": self.terms,
        }


class TableLookup(HurstFunction):
    """Interpolated table of values on a lattice; linear or cubic."""

    family = "table"

    def __init__(self, grid: GridSpec, values: np.ndarray, order: int = 1):
        super().__init__(grid)
        if order not in (1, 3):
            raise ValueError("interpolation order must be 1 or 3")
        from scipy.interpolate import RegularGridInterpolator

        self.order = order
        self.table_values = np.asarray(values, dtype=float).reshape(grid.resolution)
        self._interp = RegularGridInterpolator(
            grid.axes(),
            self.table_values,
            method="linear" if order == 1 else "cubic",
        )

    def _raw(self, pts):
        lo = np.asarray(self.domain.lower)
        hi = np.asarray(self.domain.upper)
        return self._interp(np.clip(pts, lo, hi))

    def meta(self, t0):
        # Piecewise polynomial with generically nonzero slope: exponent 1.
        return ExponentMeta(
            1.0, 1.0, 1.0,
            directional=lambda u: 1.0,
            gamma=None,
        )

    def descriptor(self):
        return {
            "family": self.family,
            "order": self.order,
            "grid": {
                "lower": list(self.domain.lower),
                "upper": list(self.domain.upper),
                "resolution": list(self.domain.resolution),
            },
            "values": self.table_values.ravel().tolist(),
        }


def gamma_limit(
    h: HurstFunction,
    t0: Point,
    u: Point,
    v: Point,
    rhos: Sequence[float],
    spread_tol: float = 1e-3,
):
    """Classify lim |H(t0+rho u) - H(t0+rho v)| / rho^alpha over a rho-sequence.

    Returns (classification, value) where classification is one of
    "converged", "zero", "divergent"; value is the limit estimate for
    "converged" and None otherwise.
    """
    alpha = h.meta(t0).pair_inf
    t0a = np.asarray(t0, dtype=float)
    if math.isinf(alpha):
        return "zero", 0.0
    vals = []
    for rho in rhos:
        pu = t0a + rho * np.asarray(u, dtype=float)
        pv = t0a + rho * np.asarray(v, dtype=float)
        vals.append(abs(h(tuple(pu)) - h(tuple(pv))) / rho**alpha)
    tail = np.asarray(vals[-4:])
    scale = np.max(np.abs(tail))
    if scale < 1e-12:
        return "zero", 0.0
    if (tail.max() - tail.min()) / scale < spread_tol:
        return "converged", float(tail[-1])
    return "divergent", None


def from_config(config: dict, domain: GridSpec) -> HurstFunction:
    """Build a HurstFunction from its JSON descriptor."""
    cfg = dict(config)
    family = cfg.pop("family")
    if family == "constant":
        return Constant(cfg["h"], domain)
    if family == "affine":
        return AffineClamped(cfg["gradient"], cfg["offset"], domain)
    if family == "sine":
        return SmoothSine(cfg["base"], cfg["amplitude"], cfg["frequency"], domain)
    if family == "sqrt":
        return SqrtShifted(cfg["base"], cfg["anchor"], domain)
    if family == "weierstrass":
        return WeierstrassLike(
            cfg["base"],
            cfg["amplitude"],
            cfg["target"],
            domain,
            lacunarity=cfg.get("lacunarity", 2.0),
            terms=cfg.get("terms", 20),
        )
    if family == "table":
        grid = GridSpec(
            cfg["grid"]["lower"], cfg["grid"]["upper"], cfg["grid"]["resolution"]
        )
        return TableLookup(grid, np.asarray(cfg["values"]), cfg.get("order", 1))
    raise ValueError(f"unknown Hurst family {family!r}")
