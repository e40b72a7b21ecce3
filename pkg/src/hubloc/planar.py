"""Small planar geometry helpers: convex hull, point-in-polygon, line
intersection."""
from __future__ import annotations

import numpy as np

__all__ = ["convex_hull", "points_in_polygon", "line_intersection", "cross"]


def cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[int]:
    """Indices of the hull vertices in counter-clockwise order.

    Andrew's monotone chain. Points lying on a hull edge are not reported
    as vertices.
    """
    pts = np.asarray(points, dtype=float)
    order = sorted(range(len(pts)), key=lambda i: (pts[i, 0], pts[i, 1]))
    if len(order) < 3:
        return order

    def half(seq):
        chain: list[int] = []
        for i in seq:
            while len(chain) >= 2 and cross(pts[chain[-2]], pts[chain[-1]], pts[i]) <= 0:
                chain.pop()
            chain.append(i)
        return chain

    lower = half(order)
    upper = half(reversed(order))
    return lower[:-1] + upper[:-1]


def points_in_polygon(xy, vertices) -> np.ndarray:
    """Even-odd rule membership for many points at once."""
    xy = np.asarray(xy, dtype=float)
    poly = np.asarray(vertices, dtype=float)
    x, y = xy[:, 0], xy[:, 1]
    inside = np.zeros(len(xy), dtype=bool)
    x0, y0 = poly[-1]
    for x1, y1 in poly:
        straddles = (y1 > y) != (y0 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xcross = x1 + (y - y1) * (x0 - x1) / (y0 - y1)
        inside ^= straddles & (x < xcross)
        x0, y0 = x1, y1
    return inside


def line_intersection(p1, p2, q1, q2) -> np.ndarray:
    """Intersection of the line through p1, p2 with the line through q1, q2."""
    p1, p2, q1, q2 = (np.asarray(v, dtype=float) for v in (p1, p2, q1, q2))
    r = p2 - p1
    s = q2 - q1
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0:
        raise ValueError("lines are parallel")
    t = ((q1[0] - p1[0]) * s[1] - (q1[1] - p1[1]) * s[0]) / denom
    return p1 + t * r
