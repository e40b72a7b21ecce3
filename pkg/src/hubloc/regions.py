"""Planar regions that can be sampled uniformly.

Each shape exposes ``sample(n, rng)`` returning an ``(n, 2)`` array, which
is what :func:`hubloc.euclidean.monte_carlo_region_hub` consumes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .planar import convex_hull, points_in_polygon

__all__ = ["Rectangle", "Rhombus", "Ellipse", "Polygon"]


def _center(c):
    c = np.asarray(c, dtype=float)
    if c.shape != (2,) or not np.all(np.isfinite(c)):
        raise ValueError("center must be a finite 2-vector")
    return c


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle with lower-left corner ``origin``.

    A zero width or height is allowed and gives a segment.
    """

    origin: tuple = (0.0, 0.0)
    width: float = 1.0
    height: float = 1.0

    def __post_init__(self):
        _center(self.origin)
        if not (self.width >= 0 and self.height >= 0) or self.width == self.height == 0:
            raise ValueError("rectangle sides must be >= 0 and not both zero")

    def sample(self, n, rng):
        u = rng.random((n, 2))
        return np.asarray(self.origin, dtype=float) + u * (self.width, self.height)


@dataclass(frozen=True)
class Rhombus:
    """Rhombus with vertices ``center +/- (p, 0)`` and ``center +/- (0, q)``."""

    center: tuple = (0.0, 0.0)
    half_diagonals: tuple = (1.0, 1.0)

    def __post_init__(self):
        _center(self.center)
        p, q = self.half_diagonals
        if not (p > 0 and q > 0):
            raise ValueError("half diagonals must be positive")

    def sample(self, n, rng):
        s, t = rng.uniform(-1.0, 1.0, (2, n))
        p, q = self.half_diagonals
        # linear image of the square [-1, 1]^2, so uniformity is preserved
        xy = np.column_stack([0.5 * (s + t) * p, 0.5 * (s - t) * q])
        return xy + np.asarray(self.center, dtype=float)


@dataclass(frozen=True)
class Ellipse:
    center: tuple = (0.0, 0.0)
    semi_axes: tuple = (1.0, 1.0)

    def __post_init__(self):
        _center(self.center)
        a, b = self.semi_axes
        if not (a > 0 and b > 0):
            raise ValueError("semi-axes must be positive")

    def sample(self, n, rng):
        r = np.sqrt(rng.random(n))
        theta = 2.0 * np.pi * rng.random(n)
        a, b = self.semi_axes
        xy = np.column_stack([a * r * np.cos(theta), b * r * np.sin(theta)])
        return xy + np.asarray(self.center, dtype=float)


@dataclass(frozen=True)
class Polygon:
    """Simple polygon given by its vertices in order; sampled by rejection."""

    vertices: tuple

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3 or not np.all(np.isfinite(v)):
            raise ValueError("polygon needs at least three finite 2-D vertices")
        if len(convex_hull(v)) < 3 or self.area() <= 0:
            raise ValueError("polygon has no area")

    def area(self) -> float:
        v = np.asarray(self.vertices, dtype=float)
        x, y = v[:, 0], v[:, 1]
        return 0.5 * abs(float(x @ np.roll(y, -1) - y @ np.roll(x, -1)))

    def sample(self, n, rng):
        v = np.asarray(self.vertices, dtype=float)
        lo, hi = v.min(axis=0), v.max(axis=0)
        out = []
        have = 0
        while have < n:
            batch = max(2 * (n - have), 64)
            cand = lo + rng.random((batch, 2)) * (hi - lo)
            cand = cand[points_in_polygon(cand, v)]
            out.append(cand)
            have += len(cand)
        return np.concatenate(out)[:n]
