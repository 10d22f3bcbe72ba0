"""Rectangular lattices in R^N_+, corner-sum increments and progressive differences.

Points are plain tuples of floats.  Lattices are enumerated row-major with
axis 1 slowest so binary dumps are reproducible bit for bit.  Degeneracy of
box axes is detected by exact coordinate equality; lattices are built with
``np.linspace`` so shared coordinates are bitwise equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

Point = tuple[float, ...]


def as_point(coords: Iterable[float]) -> Point:
    p = tuple(float(c) for c in coords)
    if not p:
        raise ValueError("a point needs at least one coordinate")
    if any(c < 0.0 for c in p):
        raise ValueError(f"coordinates must be non-negative, got {p}")
    return p


@dataclass(frozen=True)
class GridSpec:
    """Axis-aligned box [lower, upper] with a uniform lattice per axis."""

    lower: Point
    upper: Point
    resolution: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lower", as_point(self.lower))
        object.__setattr__(self, "upper", as_point(self.upper))
        object.__setattr__(self, "resolution", tuple(int(r) for r in self.resolution))
        if not (len(self.lower) == len(self.upper) == len(self.resolution)):
            raise ValueError("lower, upper and resolution must share a dimension")
        if any(a >= b for a, b in zip(self.lower, self.upper)):
            raise ValueError("lower must be strictly below upper on every axis")
        if any(r < 2 for r in self.resolution):
            raise ValueError("resolution must be at least 2 per axis")

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def size(self) -> int:
        return int(np.prod(self.resolution))

    def axes(self) -> list[np.ndarray]:
        return [
            np.linspace(a, b, r)
            for a, b, r in zip(self.lower, self.upper, self.resolution)
        ]

    def points(self) -> np.ndarray:
        """All lattice points, shape (size, N), row-major with axis 1 slowest."""
        grids = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)

    def index_of(self, p: Point) -> int:
        """Flat index of a lattice point; raises if p is off-lattice."""
        idx = 0
        for axis, (a, b, r) in enumerate(
            zip(self.lower, self.upper, self.resolution)
        ):
            ax = np.linspace(a, b, r)
            hits = np.nonzero(ax == p[axis])[0]
            if hits.size == 0:
                raise KeyError(f"point {p} is not on the lattice (axis {axis})")
            idx = idx * r + int(hits[0])
        return idx


@dataclass(frozen=True)
class Box:
    """The pair (s, t) of a rectangular increment; degenerate axes allowed."""

    lo: Point
    hi: Point

    def __post_init__(self):
        object.__setattr__(self, "lo", as_point(self.lo))
        object.__setattr__(self, "hi", as_point(self.hi))
        if len(self.lo) != len(self.hi):
            raise ValueError("box corners must share a dimension")
        if any(s > t for s, t in zip(self.lo, self.hi)):
            raise ValueError("lo must be componentwise <= hi")

    @property
    def dimension(self) -> int:
        return len(self.lo)

    def active_axes(self) -> tuple[int, ...]:
        """Indices I = {i : lo_i != hi_i}, compared exactly."""
        return tuple(i for i, (s, t) in enumerate(zip(self.lo, self.hi)) if s != t)

    def corners(self) -> list[tuple[int, Point]]:
        """Signed corners of the box restricted to its non-degenerate axes.

        Returns (sign, point) pairs; sign is (-1)^(#I - sum r) for the corner
        selector r in {0,1}^#I.  Empty for a fully degenerate box.
        """
        active = self.active_axes()
        if not active:
            return []
        out = []
        for r in itertools.product((0, 1), repeat=len(active)):
            coords = list(self.lo)
            for bit, axis in zip(r, active):
                if bit:
                    coords[axis] = self.hi[axis]
            sign = -1 if (len(active) - sum(r)) % 2 else 1
            out.append((sign, tuple(coords)))
        return out


def lattice(spec: GridSpec) -> list[Point]:
    """Ordered lattice enumeration; first point is lower, last is upper."""
    return [tuple(row) for row in spec.points()]


def rect_increment(values: Mapping[Point, float], box: Box) -> float:
    """Inclusion-exclusion corner sum over the non-degenerate axes of box."""
    total = 0.0
    for sign, corner in box.corners():
        if corner not in values:
            raise KeyError(f"missing corner value at {corner}")
        total += sign * values[corner]
    return total


def progressive_difference(
    values: Mapping[Point, float],
    x: Point,
    h: Sequence[float],
    axes: Sequence[int],
) -> float:
    """Composed one-axis differences at x; 0 if any shifted point leaves the domain."""
    x = tuple(float(c) for c in x)
    if not axes:
        if x not in values:
            raise KeyError(f"missing value at {x}")
        return values[x]
    total = 0.0
    for r in itertools.product((0, 1), repeat=len(axes)):
        coords = list(x)
        for bit, axis in zip(r, axes):
            if bit:
                coords[axis] = coords[axis] + h[axis]
        p = tuple(coords)
        if p not in values:
            return 0.0
        sign = -1 if (len(axes) - sum(r)) % 2 else 1
        total += sign * values[p]
    return total
