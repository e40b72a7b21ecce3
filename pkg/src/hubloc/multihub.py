"""Two-hub routing: every shipment goes through whichever of two hubs
gives the shorter trip.

For sender ``x`` and receiver ``y`` the trip costs
``min(d(x,u) + d(u,y), d(x,v) + d(v,y))``. The expected cost over
independent sender/receiver draws is no longer convex in ``(u, v)``, so
the optimisers below use a coarse scan or several starts followed by
compass search.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .euclidean import as_sites, solve_hub_weiszfeld

__all__ = [
    "QuadratureSpec",
    "TwoHubSolution",
    "pair_route_cost",
    "expected_route_cost",
    "two_hub_cost_uniform",
    "two_hub_cost_discrete",
    "compass_search",
    "optimize_two_hub_uniform",
    "optimize_two_hub_discrete",
]


@dataclass(frozen=True)
class QuadratureSpec:
    nodes_per_axis: int = 512
    rule: str = "midpoint"

    def __post_init__(self):
        if self.nodes_per_axis < 2:
            raise ValueError("need at least two quadrature nodes")
        if self.rule not in ("midpoint", "gauss"):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights on [0, 1]."""
        n = self.nodes_per_axis
        if self.rule == "midpoint":
            return (np.arange(n) + 0.5) / n, np.full(n, 1.0 / n)
        x, w = np.polynomial.legendre.leggauss(n)
        return 0.5 * (x + 1.0), 0.5 * w


@dataclass
class TwoHubSolution:
    hub_a: object
    hub_b: object
    expected_cost: float
    starts_tried: int
    best_start: int
    status: str = "converged"


def _dist(p, q) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return float(np.linalg.norm(np.atleast_1d(p - q)))


def pair_route_cost(x, y, u, v) -> float:
    """Length of the cheaper of the routes x -> u -> y and x -> v -> y."""
    return min(_dist(x, u) + _dist(u, y), _dist(x, v) + _dist(v, y))


def expected_route_cost(to_u: np.ndarray, to_v: np.ndarray, weights: np.ndarray) -> float:
    """Weighted mean over ordered pairs (i, j) of
    ``min(to_u[i] + to_u[j], to_v[i] + to_v[j])``.

    Routing through ``u`` wins exactly when ``D[i] + D[j] <= 0`` with
    ``D = to_u - to_v``, so after sorting by ``D`` the sum splits into
    prefix sums: O(k log k) rather than O(k^2).
    """
    a = np.asarray(to_u, dtype=float)
    b = np.asarray(to_v, dtype=float)
    w = np.asarray(weights, dtype=float)
    order = np.argsort(a - b, kind="stable")
    a, b, w = a[order], b[order], w[order]
    diff = a - b
    cw = np.concatenate([[0.0], np.cumsum(w)])
    cwa = np.concatenate([[0.0], np.cumsum(w * a)])
    cwb = np.concatenate([[0.0], np.cumsum(w * b)])
    # partners j routed via u for sender i: D[j] <= -D[i]
    m = np.searchsorted(diff, -diff, side="right")
    total_w = cw[-1]
    via_u = a * cw[m] + cwa[m]
    via_v = b * (total_w - cw[m]) + (cwb[-1] - cwb[m])
    return float(w @ (via_u + via_v)) / (total_w * total_w)


def two_hub_cost_uniform(u: float, v: float, quadrature: QuadratureSpec | None = None) -> float:
    """Expected trip length for sender and receiver uniform on [0, 1]."""
    if not (0.0 <= u <= 1.0 and 0.0 <= v <= 1.0):
        raise ValueError(f"hubs must lie in [0, 1], got ({u}, {v})")
    x, w = (quadrature or QuadratureSpec()).nodes()
    return expected_route_cost(np.abs(x - u), np.abs(x - v), w)


def two_hub_cost_discrete(sites, u, v, weights=None) -> float:
    """Expected trip length when sender and receiver are drawn
    independently from the weighted sites.

    Pairs with sender equal to receiver are included, matching
    independent draws.
    """
    pts, w = as_sites(sites, weights)
    if not w.sum() > 0:
        raise ValueError("total site weight is zero")
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if u.shape != (pts.shape[1],) or v.shape != (pts.shape[1],):
        raise ValueError("hub dimension does not match the sites")
    return expected_route_cost(np.linalg.norm(pts - u, axis=1),
                               np.linalg.norm(pts - v, axis=1), w)


def compass_search(func, x0, lower, upper, step: float, min_step: float = 1e-5,
                   max_evals: int = 200_000):
    """Box-constrained compass search with step halving.

    Polls +/- step along every coordinate, moves to the first improvement,
    and halves the step when no poll point improves. Returns
    ``(x, f, converged)``.
    """
    x = np.clip(np.asarray(x0, dtype=float), lower, upper)
    fx = func(x)
    evals = 1
    while step >= min_step:
        improved = False
        for i in range(x.size):
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[i] = min(max(trial[i] + sign * step, lower[i]), upper[i])
                if trial[i] == x[i]:
                    continue
                ft = func(trial)
                evals += 1
                if ft < fx:
                    x, fx, improved = trial, ft, True
                    break
        if evals >= max_evals:
            return x, fx, False
        if not improved:
            step *= 0.5
    return x, fx, True


def _canonical(u, v):
    a, b = np.atleast_1d(u), np.atleast_1d(v)
    return (u, v) if tuple(a) <= tuple(b) else (v, u)


def optimize_two_hub_uniform(quadrature: QuadratureSpec | None = None, multistart: int = 4,
                             seed: int = 0, same_hub: bool = False,
                             grid_step: float = 0.01, min_step: float = 1e-5) -> TwoHubSolution:
    """Best pair of hubs for the uniform distribution on [0, 1].

    Scans ``0 <= u <= v <= 1`` at ``grid_step``, then polishes by compass
    search from the best scanned pair and from ``multistart - 1`` seeded
    random pairs. With ``same_hub`` the two hubs are tied together.
    """
    if multistart < 1:
        raise ValueError("multistart must be >= 1")
    q = quadrature or QuadratureSpec()
    x, w = q.nodes()

    def cost(p):
        u, v = (p[0], p[0]) if same_hub else (p[0], p[1])
        return expected_route_cost(np.abs(x - u), np.abs(x - v), w)

    ticks = np.linspace(0.0, 1.0, int(round(1.0 / grid_step)) + 1)
    if same_hub:
        scanned = [(cost((t,)), (t,)) for t in ticks]
    else:
        scanned = [(cost((a, b)), (a, b)) for i, a in enumerate(ticks) for b in ticks[i:]]
    starts = [np.array(min(scanned, key=lambda s: s[0])[1])]
    rng = np.random.Generator(np.random.PCG64(seed))
    dim = 1 if same_hub else 2
    starts += [rng.random(dim) for _ in range(multistart - 1)]

    lower, upper = np.zeros(dim), np.ones(dim)
    best = None
    for k, s in enumerate(starts):
        p, f, ok = compass_search(cost, s, lower, upper, grid_step, min_step)
        if best is None or f < best[1]:
            best = (p, f, ok, k)
    p, f, ok, k = best
    # the problem is symmetric under (u, v) -> (1 - v, 1 - u); the quadrature
    # objective is flat between nodes, so prefer the symmetric point on a tie
    sym = np.array([0.5]) if same_hub else 0.5 * (p + 1.0 - p[::-1])
    fs = cost(sym)
    if fs <= f * (1 + 1e-12):
        p, f = sym, fs
    u, v = (p[0], p[0]) if same_hub else _canonical(p[0], p[1])
    return TwoHubSolution(float(u), float(v), float(f), len(starts), k,
                          "converged" if ok else "max-evaluations")


def optimize_two_hub_discrete(sites, weights=None, multistart: int = 8, seed: int = 0,
                              min_step: float = 1e-6) -> TwoHubSolution:
    """Best pair of hubs for independent draws from weighted sites.

    Starts are the single-hub solution (both hubs at the geometric
    median), the pair of sites at the extremes of the principal axis, and
    seeded random pairs in the bounding box; each is polished by compass
    search. The best start wins, ties going to the earlier start.
    """
    pts, w = as_sites(sites, weights)
    if len(pts) < 2:
        raise ValueError("need at least two sites")
    if not w.sum() > 0:
        raise ValueError("total site weight is zero")
    n = pts.shape[1]
    lower, upper = pts.min(axis=0), pts.max(axis=0)
    span = float(np.max(upper - lower)) or 1.0

    def cost(p):
        return expected_route_cost(np.linalg.norm(pts - p[:n], axis=1),
                                   np.linalg.norm(pts - p[n:], axis=1), w)

    median = solve_hub_weiszfeld(pts, w).location
    centered = pts - pts.mean(axis=0)
    axis = np.linalg.svd(centered, full_matrices=False)[2][0] if len(pts) > 1 else np.ones(n)
    proj = centered @ axis
    starts = [np.concatenate([median, median]),
              np.concatenate([pts[np.argmin(proj)], pts[np.argmax(proj)]])]
    rng = np.random.Generator(np.random.PCG64(seed))
    while len(starts) < max(multistart, 2):
        starts.append(np.concatenate([lower + rng.random(n) * (upper - lower)
                                      for _ in range(2)]))

    lo2, hi2 = np.concatenate([lower, lower]), np.concatenate([upper, upper])
    best = None
    for k, s in enumerate(starts):
        p, f, ok = compass_search(cost, s, lo2, hi2, 0.25 * span, min_step * span)
        if best is None or f < best[1]:
            best = (p, f, ok, k)
    p, f, ok, k = best
    a, b = p[:n], p[n:]
    if n == 1:
        a, b = float(a[0]), float(b[0])
    a, b = _canonical(a, b)
    return TwoHubSolution(a, b, float(f), len(starts), k, "converged" if ok else "max-evaluations")
