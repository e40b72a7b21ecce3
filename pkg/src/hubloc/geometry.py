"""Coordinates, distances and the spherical Earth model.

Longitudes are stored signed and east-positive, the way census files
carry them (a U.S. longitude is negative). :func:`format_coordinate`
can print them west-positive for human-readable output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GeoCoordinate",
    "EarthModel",
    "DEFAULT_EARTH",
    "as_point",
    "normalize_lon",
    "to_unit_vector",
    "unit_vectors",
    "from_unit_vector",
    "central_angle",
    "central_angles",
    "great_circle_distance",
    "geodesic_midpoint",
    "format_coordinate",
]

MEAN_EARTH_RADIUS_MILES = 3958.7613


def normalize_lon(lon_deg: float) -> float:
    """Wrap a longitude into (-180, 180]."""
    lon = math.fmod(lon_deg, 360.0)
    if lon <= -180.0:
        lon += 360.0
    elif lon > 180.0:
        lon -= 360.0
    return lon


@dataclass(frozen=True)
class GeoCoordinate:
    """Latitude/longitude in degrees, east-positive longitude."""

    lat_deg: float
    lon_deg: float

    def __post_init__(self):
        lat = float(self.lat_deg)
        lon = float(self.lon_deg)
        if not (math.isfinite(lat) and math.isfinite(lon)):
            raise ValueError(f"non-finite coordinate ({lat}, {lon})")
        if not -90.0 <= lat <= 90.0:
            raise ValueError(f"latitude {lat} outside [-90, 90]")
        object.__setattr__(self, "lat_deg", lat)
        object.__setattr__(self, "lon_deg", normalize_lon(lon))

    def __iter__(self):
        yield self.lat_deg
        yield self.lon_deg


@dataclass(frozen=True)
class EarthModel:
    radius_miles: float = MEAN_EARTH_RADIUS_MILES

    def __post_init__(self):
        if not (self.radius_miles > 0 and math.isfinite(self.radius_miles)):
            raise ValueError("Earth radius must be positive")


DEFAULT_EARTH = EarthModel()


def as_point(x) -> np.ndarray:
    """Coerce ``x`` to a finite 1-D float array of dimension >= 1."""
    p = np.atleast_1d(np.asarray(x, dtype=float))
    if p.ndim != 1 or p.size == 0:
        raise ValueError(f"expected a 1-D coordinate vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("coordinates must be finite")
    return p


def _geo(g) -> GeoCoordinate:
    return g if isinstance(g, GeoCoordinate) else GeoCoordinate(*g)


def to_unit_vector(g) -> np.ndarray:
    """Unit vector in Earth-centred coordinates (z through the north pole)."""
    g = _geo(g)
    phi = math.radians(g.lat_deg)
    lam = math.radians(g.lon_deg)
    return np.array([math.cos(phi) * math.cos(lam),
                     math.cos(phi) * math.sin(lam),
                     math.sin(phi)])


def unit_vectors(lat_deg, lon_deg) -> np.ndarray:
    """Vectorised :func:`to_unit_vector`; returns shape ``(..., 3)``."""
    phi = np.radians(np.asarray(lat_deg, dtype=float))
    lam = np.radians(np.asarray(lon_deg, dtype=float))
    cphi = np.cos(phi)
    return np.stack([cphi * np.cos(lam), cphi * np.sin(lam), np.sin(phi)], axis=-1)


def from_unit_vector(v) -> GeoCoordinate:
    x, y, z = (float(c) for c in v)
    lat = math.degrees(math.atan2(z, math.hypot(x, y)))
    lon = math.degrees(math.atan2(y, x)) if (x or y) else 0.0
    return GeoCoordinate(lat, lon)


def central_angle(a, b) -> float:
    """Angle in radians between two positions, via atan2(|a x b|, a . b).

    Unlike the arccos of the dot product this keeps full precision for
    nearly coincident and nearly antipodal points.
    """
    u = to_unit_vector(a)
    v = to_unit_vector(b)
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(u @ v))


def central_angles(nodes: np.ndarray, sites: np.ndarray) -> np.ndarray:
    """Pairwise central angles between unit vectors.

    ``nodes`` has shape (m, 3), ``sites`` shape (k, 3); the result is (m, k).
    """
    n = nodes[:, None, :]
    s = sites[None, :, :]
    cx = n[..., 1] * s[..., 2] - n[..., 2] * s[..., 1]
    cy = n[..., 2] * s[..., 0] - n[..., 0] * s[..., 2]
    cz = n[..., 0] * s[..., 1] - n[..., 1] * s[..., 0]
    dot = nodes @ sites.T
    return np.arctan2(np.sqrt(cx * cx + cy * cy + cz * cz), dot)


def great_circle_distance(a, b, earth: EarthModel = DEFAULT_EARTH) -> float:
    """Great-circle distance in miles."""
    return earth.radius_miles * central_angle(a, b)


def geodesic_midpoint(a, b) -> GeoCoordinate:
    """Midpoint of the minor great-circle arc from ``a`` to ``b``.

    Raises ``ValueError`` for antipodal points, whose midpoint is not unique.
    """
    u = to_unit_vector(a)
    v = to_unit_vector(b)
    s = u + v
    norm = float(np.linalg.norm(s))
    if norm < 1e-12:
        raise ValueError("antipodal points have no unique midpoint")
    return from_unit_vector(s / norm)


def format_coordinate(g, west_positive: bool = False, places: int = 6) -> str:
    """Render ``(lat, lon)``; with ``west_positive`` a western longitude
    prints as a positive number followed by W."""
    g = _geo(g)
    lat = f"{g.lat_deg:.{places}f}"
    if not west_positive:
        return f"({lat}, {g.lon_deg:.{places}f})"
    lon = g.lon_deg
    hemi = "W" if lon < 0 else "E"
    ns = "S" if g.lat_deg < 0 else "N"
    return f"({abs(g.lat_deg):.{places}f}{ns}, {abs(lon):.{places}f}{hemi})"
