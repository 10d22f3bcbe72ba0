"""Radial quadrature of the covariance normalization factor and its derivatives.

The factor is the integral of (1 - cos u_1) / ||u||^(x+N) over R^N, with
derivatives in x obtained by inserting powers of ln(1/||u||).  Reduction to
polar coordinates gives

    integral_0^inf  A_N(r) * r^(-x-1) * (-ln r)^n  dr

where A_N is the angular factor, known in closed form for N = 1, 2, 3:

    A_1(r) = 2 (1 - cos r)
    A_2(r) = 2 pi (1 - J0(r))
    A_3(r) = 4 pi (1 - sin(r) / r)

On [0, 1] the integral is summed exactly from the Taylor series of A_N
(term-by-term integration is analytic and the series converges factorially).
On [1, inf) the constant part of A_N integrates analytically and the
oscillatory remainder is integrated arch by arch between the zeros of the
oscillation, with repeated averaging to accelerate the alternating sum.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from math import factorial

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline
from scipy.special import gamma as gamma_fn
from scipy.special import j0, jn_zeros

# Hurst parameters are clamped to this interval; kernel exponents x = H + H'
# therefore live in [2*HURST_MIN, 2*HURST_MAX].
HURST_MIN = 0.05
HURST_MAX = 0.95
X_MIN = 2.0 * HURST_MIN
X_MAX = 2.0 * HURST_MAX

DEFAULT_MESH_POINTS = 256
DEFAULT_REL_TOL = {1: 1e-8, 2: 1e-6, 3: 1e-6}

_SERIES_KMAX = 60
_TAIL_ARCHES = 48
_TAIL_HEAD = 8
_GL_ORDER = 24


class QuadratureError(RuntimeError):
    """Raised when the tail acceleration fails to meet its tolerance."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def surface_measure(dimension: int) -> float:
    """Total measure of the unit sphere S^(N-1)."""
    return 2.0 * np.pi ** (dimension / 2.0) / gamma_fn(dimension / 2.0)


def _angular_moment(k: int, dimension: int) -> float:
    """Integral of omega_1^(2k) over S^(N-1)."""
    ratio = 1.0
    for j in range(k):
        ratio *= (2 * j + 1) / (dimension + 2 * j)
    return surface_measure(dimension) * ratio


def _oscillation(dimension: int):
    """Oscillatory part O_N with A_N(r) = surface - O_N(r), and its zeros > 1."""
    if dimension == 1:
        zeros = np.pi / 2.0 + np.pi * np.arange(_TAIL_ARCHES)
        return (lambda r: 2.0 * np.cos(r)), zeros
    if dimension == 2:
        return (lambda r: 2.0 * np.pi * j0(r)), jn_zeros(0, _TAIL_ARCHES)
    if dimension == 3:
        zeros = np.pi * np.arange(1, _TAIL_ARCHES + 1)
        return (lambda r: 4.0 * np.pi * np.sin(r) / r), zeros
    raise ValueError(f"dimension must be 1, 2 or 3, got {dimension}")


def _series_part(xs: np.ndarray, dimension: int, orders) -> np.ndarray:
    """Exact value of the integral restricted to r in [0, 1]."""
    out = np.zeros((len(orders), xs.size))
    for k in range(1, _SERIES_KMAX + 1):
        coeff = (-1.0) ** (k + 1) * _angular_moment(k, dimension) / factorial(2 * k)
        block = np.stack(
            [coeff * factorial(n) / (2.0 * k - xs) ** (n + 1) for n in orders]
        )
        out += block
        if np.max(np.abs(block)) < 1e-18 * max(np.max(np.abs(out)), 1.0):
            break
    return out


def _tail_oscillatory(xs: np.ndarray, dimension: int, orders) -> np.ndarray:
    """K_n(x) = integral_1^inf O_N(r) r^(-x-1) ln^n r dr, arch by arch."""
    osc, zeros = _oscillation(dimension)
    breaks = np.concatenate(([1.0], zeros[zeros > 1.0]))
    nodes, weights = leggauss(_GL_ORDER)

    mids = 0.5 * (breaks[1:] + breaks[:-1])
    halfs = 0.5 * (breaks[1:] - breaks[:-1])
    r = mids[:, None] + halfs[:, None] * nodes[None, :]  # (arches, GL)
    w = halfs[:, None] * weights[None, :]
    base = osc(r) * w  # (arches, GL)
    logr = np.log(r)

    # terms[j, n, m] = integral over arch j of the order-n integrand at x_m
    rad = np.exp(-(xs[None, None, :] + 1.0) * logr[:, :, None])  # (arches, GL, M)
    terms = np.stack(
        [np.einsum("jg,jgm->jm", base * logr**n, rad) for n in orders], axis=1
    )

    head = terms[:_TAIL_HEAD].sum(axis=0)
    partial = head[None] + np.cumsum(terms[_TAIL_HEAD:], axis=0)
    prev = None
    while partial.shape[0] > 1:
        prev = partial
        partial = 0.5 * (partial[:-1] + partial[1:])
    est = partial[0]
    if prev is not None:
        spread = np.max(np.abs(prev[1] - prev[0]))
        if spread > 1e-10 * max(np.max(np.abs(est)), 1.0):
            raise QuadratureError(
                f"tail acceleration spread {spread:.3e} above tolerance",
                partial=est,
            )
    return est


def d_f_derivs_mesh(
    xs: np.ndarray, dimension: int, orders=(0, 1, 2)
) -> np.ndarray:
    """Direct quadrature of the factor and derivatives on a mesh of exponents.

    Returns an array of shape (len(orders), len(xs)).
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < X_MIN - 1e-12) or np.any(xs > X_MAX + 1e-12):
        raise ValueError(f"exponent outside [{X_MIN}, {X_MAX}]")
    orders = tuple(orders)
    series = _series_part(xs, dimension, orders)
    surface = surface_measure(dimension)
    const = np.stack(
        [(-1.0) ** n * surface * factorial(n) / xs ** (n + 1) for n in orders]
    )
    osc = _tail_oscillatory(xs, dimension, orders)
    signs = np.array([(-1.0) ** n for n in orders])[:, None]
    return series + const - signs * osc


def d_f_direct(x: float, dimension: int, order: int = 0) -> float:
    """Single-point direct quadrature (no table)."""
    return float(d_f_derivs_mesh(np.array([x]), dimension, (order,))[0, 0])


def log_weighted_direct(x: float, dimension: int, log_anchor: float) -> float:
    """Direct quadrature with the squared-log weight (log_anchor - ln||u||)^2.

    This is the single-integral form of the curvature factor; expanding the
    square reproduces the order-0/1/2 derivative combination.
    """
    vals = d_f_derivs_mesh(np.array([x]), dimension)[:, 0]
    # (a - ln u)^2 = a^2 - 2 a ln u + ln^2 u ; with the order-n integrals
    # carrying (-ln u)^n this is a^2 * D + 2 a * D' + D''.
    return float(log_anchor**2 * vals[0] + 2.0 * log_anchor * vals[1] + vals[2])


@dataclass
class SpecialTable:
    """Cached mesh of the normalization factor and its first two derivatives."""

    dimension: int
    mesh: np.ndarray
    values: np.ndarray  # shape (3, len(mesh)); orders 0, 1, 2
    rel_tol: float
    settings: dict = field(default_factory=dict)
    _splines: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.values.shape != (3, self.mesh.size):
            raise ValueError("values must have shape (3, len(mesh))")
        if np.any(self.values[0] <= 0.0):
            raise ValueError("normalization factor must be positive on the mesh")
        self._splines = [CubicSpline(self.mesh, self.values[n]) for n in range(3)]

    @property
    def x_min(self) -> float:
        return float(self.mesh[0])

    @property
    def x_max(self) -> float:
        return float(self.mesh[-1])

    def value(self, x, order: int = 0):
        x = np.asarray(x, dtype=float)
        if np.any(x < self.x_min - 1e-12) or np.any(x > self.x_max + 1e-12):
            raise ValueError(
                f"exponent outside table domain [{self.x_min}, {self.x_max}]"
            )
        out = self._splines[order](np.clip(x, self.x_min, self.x_max))
        return float(out) if out.ndim == 0 else out

    def interp_error(self, x: float, order: int = 0) -> float:
        """|interpolated - direct| / |direct| at a single exponent."""
        direct = d_f_direct(x, self.dimension, order)
        return abs(self.value(x, order) - direct) / abs(direct)

    def checksum(self) -> str:
        h = hashlib.sha256()
        h.update(np.int64(self.dimension).tobytes())
        h.update(self.mesh.tobytes())
        h.update(self.values.tobytes())
        return h.hexdigest()

    def save(self, path: str) -> None:
        np.savez(
            path,
            dimension=self.dimension,
            mesh=self.mesh,
            values=self.values,
            rel_tol=self.rel_tol,
        )

    @classmethod
    def load(cls, path: str) -> "SpecialTable":
        data = np.load(path)
        return cls(
            dimension=int(data["dimension"]),
            mesh=data["mesh"],
            values=data["values"],
            rel_tol=float(data["rel_tol"]),
        )


_TABLE_CACHE: dict[tuple[int, int], SpecialTable] = {}


def build_table(dimension: int, points: int = DEFAULT_MESH_POINTS) -> SpecialTable:
    mesh = np.linspace(X_MIN, X_MAX, points)
    values = d_f_derivs_mesh(mesh, dimension)
    return SpecialTable(
        dimension=dimension,
        mesh=mesh,
        values=values,
        rel_tol=DEFAULT_REL_TOL.get(dimension, 1e-6),
        settings={
            "radial_split": 1.0,
            "tail_arches": _TAIL_ARCHES,
            "gl_order": _GL_ORDER,
        },
    )


def get_table(dimension: int, points: int = DEFAULT_MESH_POINTS) -> SpecialTable:
    """Per-process table cache, optionally persisted under MBF_TABLE_CACHE."""
    key = (dimension, points)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    cache_dir = os.environ.get("MBF_TABLE_CACHE")
    path = None
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, f"dfactor_n{dimension}_m{points}.npz")
        if os.path.exists(path):
            table = SpecialTable.load(path)
            _TABLE_CACHE[key] = table
            return table
    table = build_table(dimension, points)
    if path:
        table.save(path)
    _TABLE_CACHE[key] = table
    return table
