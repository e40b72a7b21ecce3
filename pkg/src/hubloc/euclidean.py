"""Weighted Fermat-Weber hubs in R^n.

The hub of weighted sites ``x_i`` minimises ``f(x) = sum_i w_i |x - x_i|``.
For non-collinear sites the minimiser is unique and lies in the convex
hull of the sites. It is either one of the sites or the point where the
weighted unit vectors toward the sites cancel.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .geometry import as_point
from .planar import convex_hull, line_intersection

__all__ = [
    "Status",
    "WeightedSite",
    "HubSolution",
    "SolverOptions",
    "ConvergenceError",
    "as_sites",
    "merge_duplicates",
    "is_collinear",
    "total_distance",
    "distance_gradient",
    "vertex_optimality",
    "solve_hub_1d",
    "solve_hub_weiszfeld",
    "fermat_point_triangle",
    "hub_of_four",
    "monte_carlo_region_hub",
]

log = logging.getLogger(__name__)

_TWO_THIRDS_PI = 2.0 * math.pi / 3.0


class Status(str, Enum):
    INTERIOR = "converged-interior"
    AT_SITE = "converged-at-site"
    GRID = "grid-minimum"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class WeightedSite:
    location: np.ndarray
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "location", as_point(self.location))
        w = float(self.weight)
        if not (w >= 0 and math.isfinite(w)):
            raise ValueError(f"site weight must be finite and >= 0, got {self.weight}")
        object.__setattr__(self, "weight", w)


@dataclass
class HubSolution:
    """Result of a hub computation.

    ``objective`` is the weighted total distance for Euclidean solvers and
    the weighted mean distance in miles for spherical ones. ``trace`` holds
    per-level objective values for solvers that refine.
    """

    location: object
    objective: float
    status: Status
    iterations: int = 0
    gradient_norm: float | None = None
    trace: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class SolverOptions:
    tolerance: float = 1e-10
    max_iterations: int = 10_000
    collinearity_tolerance: float = 1e-12

    def __post_init__(self):
        if self.tolerance <= 0 or self.max_iterations <= 0 or self.collinearity_tolerance <= 0:
            raise ValueError("solver options must be positive")


class ConvergenceError(RuntimeError):
    """The iteration budget ran out; ``best`` carries the best iterate."""

    def __init__(self, message: str, best: HubSolution):
        super().__init__(message)
        self.best = best


def as_sites(sites, weights=None) -> tuple[np.ndarray, np.ndarray]:
    """Normalise site input to a ``(k, n)`` location array and ``(k,)`` weights.

    ``sites`` is either a sequence of :class:`WeightedSite` or array-like
    coordinates; a flat sequence of numbers is read as k points on a line.
    """
    if len(sites) and isinstance(sites[0], WeightedSite):
        if weights is not None:
            raise ValueError("weights given twice")
        dims = {s.location.size for s in sites}
        if len(dims) != 1:
            raise ValueError(f"sites have mixed dimensions {sorted(dims)}")
        pts = np.stack([s.location for s in sites])
        w = np.array([s.weight for s in sites])
    else:
        pts = np.asarray(sites, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2:
            raise ValueError(f"sites must be a (k, n) array, got shape {pts.shape}")
        w = np.ones(len(pts)) if weights is None else np.asarray(weights, dtype=float).ravel()
    if len(pts) == 0:
        raise ValueError("no sites given")
    if w.shape != (len(pts),):
        raise ValueError(f"{len(w)} weights for {len(pts)} sites")
    if not np.all(np.isfinite(pts)):
        raise ValueError("site coordinates must be finite")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError("weights must be finite and non-negative")
    return pts, w


def merge_duplicates(pts: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Collapse coincident sites, summing their weights."""
    uniq, inverse = np.unique(pts, axis=0, return_inverse=True)
    if len(uniq) == len(pts):
        return pts, w
    return uniq, np.bincount(inverse.ravel(), weights=w, minlength=len(uniq))


def is_collinear(pts: np.ndarray, tol: float = 1e-12) -> bool:
    if len(pts) < 3 or pts.shape[1] == 1:
        return True
    s = np.linalg.svd(pts - pts.mean(axis=0), compute_uv=False)
    return s[0] == 0 or s[1] <= tol * s[0]


def _point_for(x, n: int) -> np.ndarray:
    p = as_point(x)
    if p.size != n:
        raise ValueError(f"point has dimension {p.size}, sites have {n}")
    return p


def total_distance(sites, x, weights=None) -> float:
    """Weighted sum of Euclidean distances from ``x`` to the sites."""
    pts, w = as_sites(sites, weights)
    x = _point_for(x, pts.shape[1])
    return float(w @ np.linalg.norm(pts - x, axis=1))


def distance_gradient(sites, x, weights=None) -> np.ndarray:
    """Gradient ``sum_i w_i (x - x_i)/|x - x_i|`` of :func:`total_distance`.

    Undefined at a positive-weight site; use :func:`vertex_optimality` there.
    """
    pts, w = as_sites(sites, weights)
    x = _point_for(x, pts.shape[1])
    keep = w > 0
    diff = x - pts[keep]
    d = np.linalg.norm(diff, axis=1)
    if np.any(d == 0):
        raise ValueError("gradient is undefined at a site")
    return (w[keep] / d) @ diff


def _pull(pts, w, j) -> np.ndarray:
    """Weighted sum of unit vectors from the other sites toward site ``j``."""
    diff = pts[j] - pts
    d = np.linalg.norm(diff, axis=1)
    d[j] = 1.0
    coef = w / d
    coef[j] = 0.0
    return coef @ diff


def _site_is_optimal(pts, w, j, rtol=1e-12) -> bool:
    return float(np.linalg.norm(_pull(pts, w, j))) <= w[j] * (1 + rtol)


def vertex_optimality(sites, i: int, weights=None, rtol: float = 1e-12) -> bool:
    """True iff site ``i`` minimises the weighted total distance.

    The test is the subgradient condition: the weighted unit vectors from
    the other sites toward site ``i`` must sum to a vector no longer than
    the weight sitting at site ``i``. Coincident sites are merged first.
    """
    pts, w = as_sites(sites, weights)
    if not -len(pts) <= i < len(pts):
        raise IndexError(f"site index {i} out of range")
    target = pts[i]
    pts, w = merge_duplicates(pts, w)
    j = int(np.flatnonzero(np.all(pts == target, axis=1))[0])
    return _site_is_optimal(pts, w, j, rtol)


def solve_hub_1d(values, weights=None) -> tuple[float, float]:
    """Interval ``(lo, hi)`` of weighted medians of ``values``.

    Every point of the interval minimises ``sum_i w_i |x - v_i|``. A list
    of ``(value, weight)`` pairs is also accepted.
    """
    v = np.asarray(values, dtype=float)
    if weights is None and v.ndim == 2 and v.shape[1] == 2:
        v, w = v[:, 0], v[:, 1]
    else:
        v = v.ravel()
        w = np.ones_like(v) if weights is None else np.asarray(weights, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("no values given")
    if w.shape != v.shape:
        raise ValueError(f"{w.size} weights for {v.size} values")
    if not (np.all(np.isfinite(v)) and np.all(np.isfinite(w))) or np.any(w < 0):
        raise ValueError("values must be finite and weights non-negative")
    keep = w > 0
    if not keep.any():
        raise ValueError("all weights are zero")
    v, w = v[keep], w[keep]
    order = np.argsort(v, kind="stable")
    v, w = v[order], w[order]
    cum = np.cumsum(w)
    half = cum[-1] / 2.0
    slack = 1e-12 * cum[-1]
    lo = v[np.searchsorted(cum, half - slack, side="left")]
    hi = v[min(np.searchsorted(cum, half + slack, side="right"), v.size - 1)]
    return float(lo), float(hi)


def _solution(pts, w, x, status, iterations, at_site=False) -> HubSolution:
    obj = float(w @ np.linalg.norm(pts - x, axis=1))
    gn = None
    if not at_site:
        diff = x - pts
        d = np.linalg.norm(diff, axis=1)
        if np.all(d > 0):
            gn = float(np.linalg.norm((w / d) @ diff))
    return HubSolution(location=x.copy(), objective=obj, status=status,
                       iterations=iterations, gradient_norm=gn)


def _solve_collinear(pts, w) -> HubSolution:
    center = pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts - center, full_matrices=False)
    direction = vt[0]
    t = (pts - center) @ direction
    lo, hi = solve_hub_1d(t, w)
    tm = 0.5 * (lo + hi)
    hits = np.flatnonzero(t == tm)
    if hits.size:
        return _solution(pts, w, pts[hits[0]], Status.AT_SITE, 0, at_site=True)
    return _solution(pts, w, center + tm * direction, Status.INTERIOR, 0)


def _newton_polish(pts, w, x, target, steps=50):
    """Damped Newton steps on the smooth part of f; returns (x, |grad|)."""
    n = pts.shape[1]
    f = float(w @ np.linalg.norm(pts - x, axis=1))
    gn = math.inf
    for _ in range(steps):
        diff = x - pts
        d = np.linalg.norm(diff, axis=1)
        if np.any(d == 0):
            break
        u = diff / d[:, None]
        g = (w / d) @ diff
        gn = float(np.linalg.norm(g))
        if gn <= target:
            break
        c = w / d
        hess = c.sum() * np.eye(n) - (u * c[:, None]).T @ u
        try:
            step = np.linalg.solve(hess, g)
        except np.linalg.LinAlgError:
            break
        t = 1.0
        while t > 1e-8:
            trial = x - t * step
            ft = float(w @ np.linalg.norm(pts - trial, axis=1))
            if ft <= f:
                break
            t *= 0.5
        else:
            break
        if np.array_equal(trial, x):
            break
        x, f = trial, ft
    return x, gn


def solve_hub_weiszfeld(sites, weights=None, options: SolverOptions | None = None) -> HubSolution:
    """Hub of weighted sites by reweighted-average fixed-point iteration.

    Starts from the weighted centroid and iterates
    ``x <- sum(w_i x_i / d_i) / sum(w_i / d_i)``. Each iteration also checks
    whether the nearest site satisfies the vertex condition, in which case
    that site is returned. An iterate that lands exactly on a non-optimal
    site is pushed off it along the steepest-descent direction of the
    subgradient. Collinear input is solved as a 1-D weighted median.
    """
    opts = options or SolverOptions()
    pts, w = as_sites(sites, weights)
    keep = w > 0
    if not keep.any():
        raise ValueError("all site weights are zero")
    pts, w = merge_duplicates(pts[keep], w[keep])
    total = float(w.sum())

    if len(pts) == 1:
        return _solution(pts, w, pts[0], Status.AT_SITE, 0, at_site=True)
    if is_collinear(pts, opts.collinearity_tolerance):
        return _solve_collinear(pts, w)

    scale = float(np.linalg.norm(np.ptp(pts, axis=0)))
    target = opts.tolerance * total
    x = (w @ pts) / total
    best_x, best_f = x, math.inf

    it = 0
    for it in range(1, opts.max_iterations + 1):
        diff = x - pts
        d = np.linalg.norm(diff, axis=1)
        j = int(np.argmin(d))
        if d[j] <= 1e-15 * scale:
            # the fixed-point map is undefined on a site
            x = pts[j]
            pull = _pull(pts, w, j)
            r = float(np.linalg.norm(pull))
            if r <= w[j] * (1 + 1e-12):
                return _solution(pts, w, x, Status.AT_SITE, it, at_site=True)
            others = np.ones(len(pts), dtype=bool)
            others[j] = False
            dj = np.linalg.norm(pts[others] - x, axis=1)
            length = (r - w[j]) / float(np.sum(w[others] / dj))
            x = x - length * pull / r
            continue

        f = float(w @ d)
        if f < best_f:
            best_x, best_f = x, f
        g = (w / d) @ diff
        if float(np.linalg.norm(g)) <= target:
            return _solution(pts, w, x, Status.INTERIOR, it)
        if _site_is_optimal(pts, w, j):
            return _solution(pts, w, pts[j], Status.AT_SITE, it, at_site=True)

        if it % 50 == 0:
            # linear convergence stalls near sites; a Newton polish finishes it
            xp, gn = _newton_polish(pts, w, x, target, steps=10)
            if gn <= target:
                return _solution(pts, w, xp, Status.INTERIOR, it)

        c = w / d
        x_new = (c @ pts) / c.sum()
        if float(np.linalg.norm(x_new - x)) <= 4 * np.finfo(float).eps * max(scale, 1.0):
            break
        x = x_new

    x, gn = _newton_polish(pts, w, best_x if best_f < math.inf else x, target)
    if gn <= target:
        return _solution(pts, w, x, Status.INTERIOR, it)
    best = _solution(pts, w, x, Status.INTERIOR, it)
    raise ConvergenceError(
        f"no convergence after {it} iterations (|grad| = {gn:.3e}, target {target:.3e})", best)


def _angle(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between two vectors, accurate near 0 and pi."""
    a = u / np.linalg.norm(u)
    b = v / np.linalg.norm(v)
    return 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))


def fermat_point_triangle(a, b, c) -> HubSolution:
    """Unit-weight hub of three points.

    If every angle of the triangle is below 120 degrees the hub is the
    interior point that sees each side under 120 degrees; otherwise it is
    the vertex of the wide angle. Collinear input yields the middle point.
    """
    pts = np.stack([as_point(a), as_point(b), as_point(c)])
    if len({p.size for p in pts}) != 1:
        raise ValueError("points have different dimensions")
    if len(np.unique(pts, axis=0)) < 3:
        raise ValueError("triangle vertices must be distinct")
    w = np.ones(3)
    angles = [_angle(pts[(i + 1) % 3] - pts[i], pts[(i + 2) % 3] - pts[i]) for i in range(3)]
    wide = int(np.argmax(angles))
    if angles[wide] >= _TWO_THIRDS_PI * (1 - 1e-12):
        return _solution(pts, w, pts[wide], Status.AT_SITE, 0, at_site=True)

    # barycentric coordinates side_i / sin(angle_i + 60 deg)
    sides = np.array([np.linalg.norm(pts[(i + 1) % 3] - pts[(i + 2) % 3]) for i in range(3)])
    bary = sides / np.sin(np.array(angles) + math.pi / 3)
    x = (bary @ pts) / bary.sum()
    return _solution(pts, w, x, Status.INTERIOR, 0)


def hub_of_four(a, b, c, d) -> HubSolution:
    """Unit-weight hub of four planar points.

    With a quadrilateral hull the hub is where the diagonals cross; with a
    triangular hull it is the point inside (or on the edge of) the
    triangle formed by the other three.
    """
    pts = np.stack([as_point(p) for p in (a, b, c, d)])
    if pts.shape[1] != 2:
        raise ValueError("hub_of_four works on planar points")
    w = np.ones(4)
    if len(np.unique(pts, axis=0)) < 4 or is_collinear(pts):
        return solve_hub_weiszfeld(pts, w)
    hull = convex_hull(pts)
    if len(hull) == 4:
        x = line_intersection(pts[hull[0]], pts[hull[2]], pts[hull[1]], pts[hull[3]])
        return _solution(pts, w, x, Status.INTERIOR, 0)
    inner = next(i for i in range(4) if i not in hull)
    return _solution(pts, w, pts[inner], Status.AT_SITE, 0, at_site=True)


def monte_carlo_region_hub(region, n: int, seed: int = 0,
                           options: SolverOptions | None = None) -> HubSolution:
    """Hub of ``n`` points drawn uniformly from ``region``.

    ``region`` is any object with a ``sample(n, rng)`` method, such as the
    shapes in :mod:`hubloc.regions`. The generator is numpy's PCG64 seeded
    with ``seed``, so results reproduce exactly.
    """
    if n < 1:
        raise ValueError("sample count must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    sample = region.sample(n, rng)
    return solve_hub_weiszfeld(sample, options=options)
