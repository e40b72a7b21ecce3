"""Hubs on the sphere by exhaustive grid search with nested refinement.

The mean great-circle distance need not have a unique minimiser on the
sphere (two antipodal sites are minimised by their whole equator), so no
gradient method is used: every node of a latitude/longitude grid is
evaluated, and the best node is refined on successively finer windows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .euclidean import HubSolution, Status
from .geometry import (DEFAULT_EARTH, EarthModel, GeoCoordinate, central_angles,
                       normalize_lon, unit_vectors)

__all__ = [
    "GeoSite",
    "GridSpec",
    "CONUS_WINDOW",
    "as_geo_sites",
    "spherical_mean_distance",
    "grid_axes",
    "grid_surface",
    "grid_minimize",
]

# pairs per chunk when evaluating the objective on many nodes at once
_CHUNK_PAIRS = 4_000_000


@dataclass(frozen=True)
class GeoSite:
    location: GeoCoordinate
    weight: float = 1.0

    def __post_init__(self):
        if not isinstance(self.location, GeoCoordinate):
            object.__setattr__(self, "location", GeoCoordinate(*self.location))
        if not (self.weight >= 0 and math.isfinite(self.weight)):
            raise ValueError(f"site weight must be finite and >= 0, got {self.weight}")


@dataclass(frozen=True)
class GridSpec:
    """Search grid; the bounds are inclusive and given in degrees."""

    lat_range: tuple = (17.0, 72.0)
    lon_range: tuple = (-180.0, -65.0)
    step_deg: float = 1.0
    refine_levels: int = 3
    refine_factor: float = 10.0

    def __post_init__(self):
        lat0, lat1 = self.lat_range
        lon0, lon1 = self.lon_range
        if not (-90 <= lat0 <= lat1 <= 90):
            raise ValueError(f"bad latitude range {self.lat_range}")
        if not lon0 <= lon1:
            raise ValueError(f"bad longitude range {self.lon_range}")
        if not self.step_deg > 0:
            raise ValueError("grid step must be positive")
        if self.refine_levels < 0 or not self.refine_factor > 1:
            raise ValueError("refine_levels must be >= 0 and refine_factor > 1")


# lat 17..72, lon -180..-65 covers all fifty states
CONUS_WINDOW = GridSpec()


class _Sites:
    """Unit vectors and weights of a site collection, prepared once."""

    def __init__(self, sites, weights=None):
        if isinstance(sites, _Sites):
            self.__dict__.update(sites.__dict__)
            return
        if len(sites) and isinstance(sites[0], GeoSite):
            lat = np.array([s.location.lat_deg for s in sites])
            lon = np.array([s.location.lon_deg for s in sites])
            w = np.array([s.weight for s in sites], dtype=float)
        else:
            arr = np.asarray(sites, dtype=float)
            if arr.ndim != 2 or arr.shape[1] not in (2, 3):
                raise ValueError("sites must be GeoSites or rows of (lat, lon[, weight])")
            lat, lon = arr[:, 0], arr[:, 1]
            w = arr[:, 2] if arr.shape[1] == 3 else np.ones(len(arr))
            if weights is not None:
                w = np.asarray(weights, dtype=float)
        if len(lat) == 0:
            raise ValueError("no sites given")
        if np.any(np.abs(lat) > 90) or not np.all(np.isfinite(lon)):
            raise ValueError("invalid site coordinates")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite and non-negative")
        keep = w > 0
        self.total = float(w.sum())
        if not self.total > 0:
            raise ValueError("total site weight is zero")
        self.units = unit_vectors(lat[keep], lon[keep])
        self.weights = w[keep]


def as_geo_sites(sites, weights=None):
    """Pre-process sites for repeated objective evaluation."""
    return _Sites(sites, weights)


def _mean_distances(nodes: np.ndarray, prepared: _Sites, radius: float) -> np.ndarray:
    out = np.empty(len(nodes))
    rows = max(1, _CHUNK_PAIRS // len(prepared.weights))
    for start in range(0, len(nodes), rows):
        ang = central_angles(nodes[start:start + rows], prepared.units)
        out[start:start + rows] = ang @ prepared.weights
    return radius * out / prepared.total


def spherical_mean_distance(sites, candidate, earth: EarthModel = DEFAULT_EARTH,
                            weights=None) -> float:
    """Weighted mean great-circle distance (miles) from ``candidate`` to the sites."""
    prepared = _Sites(sites, weights)
    g = candidate if isinstance(candidate, GeoCoordinate) else GeoCoordinate(*candidate)
    node = unit_vectors(g.lat_deg, g.lon_deg)[None, :]
    return float(_mean_distances(node, prepared, earth.radius_miles)[0])


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def grid_axes(spec: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Latitude and longitude node values of the coarse grid."""
    return _axis(*spec.lat_range, spec.step_deg), _axis(*spec.lon_range, spec.step_deg)


def _evaluate(prepared, lats, lons, radius) -> np.ndarray:
    la, lo = np.meshgrid(lats, lons, indexing="ij")
    nodes = unit_vectors(la.ravel(), lo.ravel())
    return _mean_distances(nodes, prepared, radius).reshape(len(lats), len(lons))


def grid_surface(sites, spec: GridSpec, earth: EarthModel = DEFAULT_EARTH, weights=None):
    """Objective on the coarse grid: ``(lats, lons, values)`` with
    ``values[i, j]`` the mean distance at ``(lats[i], lons[j])``."""
    prepared = _Sites(sites, weights)
    lats, lons = grid_axes(spec)
    return lats, lons, _evaluate(prepared, lats, lons, earth.radius_miles)


def _argmin(values: np.ndarray) -> tuple[int, int]:
    # first minimum in row-major order = smallest (lat, lon) among ties
    return np.unravel_index(int(np.argmin(values)), values.shape)


def grid_minimize(sites, spec: GridSpec = CONUS_WINDOW, earth: EarthModel = DEFAULT_EARTH,
                  weights=None) -> HubSolution:
    """Minimise the weighted mean great-circle distance over a grid.

    The coarse grid is scanned row-major (latitude outer). Each refinement
    level then scans a window of one previous step around the incumbent
    at ``step / refine_factor``; the incumbent itself is a node of every
    window, so the objective never increases. ``trace`` records the best
    objective after each level and ``iterations`` counts node evaluations.
    """
    prepared = _Sites(sites, weights)
    radius = earth.radius_miles
    lats, lons = grid_axes(spec)
    values = _evaluate(prepared, lats, lons, radius)
    i, j = _argmin(values)
    lat, lon, best = float(lats[i]), float(lons[j]), float(values[i, j])
    trace = [best]
    evaluations = values.size

    step = spec.step_deg
    for _ in range(spec.refine_levels):
        fine = step / spec.refine_factor
        half = int(math.floor(spec.refine_factor + 1e-9))
        offsets = fine * np.arange(-half, half + 1)
        wlats = lat + offsets
        wlats = wlats[np.abs(wlats) <= 90.0]
        wlons = lon + offsets
        values = _evaluate(prepared, wlats, wlons, radius)
        evaluations += values.size
        i, j = _argmin(values)
        if values[i, j] <= best:
            lat, lon, best = float(wlats[i]), float(wlons[j]), float(values[i, j])
        trace.append(best)
        step = fine

    return HubSolution(location=GeoCoordinate(lat, normalize_lon(lon)), objective=best,
                       status=Status.GRID, iterations=evaluations, trace=tuple(trace))
