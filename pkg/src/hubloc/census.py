"""Census tract files and the population statistics computed from them.

A tract file has one comma-delimited line per tract::

    06,077,005404,6511,+37.732419,-121.425296

giving state, county and tract codes, the tract population, and the
latitude/longitude of the tract's population center. Each tract's
population is treated as concentrated at that center.
"""
from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .euclidean import HubSolution, solve_hub_1d
from .geometry import DEFAULT_EARTH, EarthModel, GeoCoordinate, great_circle_distance
from .spherical import CONUS_WINDOW, GridSpec, grid_minimize, spherical_mean_distance

__all__ = [
    "TractRecord",
    "TractParseError",
    "parse_tract_line",
    "parse_tract_file",
    "read_tract_file",
    "format_tract_record",
    "tract_arrays",
    "mean_center",
    "median_center",
    "population_hub",
    "LocationReport",
    "location_report",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TractRecord:
    state: str
    county: str
    tract: str
    population: int
    center: GeoCoordinate


class TractParseError(ValueError):
    def __init__(self, line_no: int, message: str, text: str = ""):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.text = text


def _split(line: str) -> list[str]:
    if "," in line:
        return [f.strip() for f in line.split(",")]
    return line.split()


def parse_tract_line(line: str, line_no: int = 1) -> TractRecord:
    fields = _split(line)
    if len(fields) != 6:
        raise TractParseError(line_no, f"expected 6 fields, got {len(fields)}", line)
    state, county, tract, pop, lat, lon = fields
    for name, code in (("state", state), ("county", county), ("tract", tract)):
        if not code:
            raise TractParseError(line_no, f"empty {name} code", line)
    try:
        population = int(pop)
    except ValueError:
        raise TractParseError(line_no, f"population {pop!r} is not an integer", line) from None
    if population < 0:
        raise TractParseError(line_no, "negative population", line)
    try:
        lat_v, lon_v = float(lat), float(lon)
    except ValueError:
        raise TractParseError(line_no, f"non-numeric coordinate in {lat!r}, {lon!r}", line) from None
    if not (math.isfinite(lat_v) and abs(lat_v) <= 90):
        raise TractParseError(line_no, f"latitude {lat} out of range", line)
    if not (math.isfinite(lon_v) and abs(lon_v) <= 180):
        raise TractParseError(line_no, f"longitude {lon} out of range", line)
    return TractRecord(state, county, tract, population, GeoCoordinate(lat_v, lon_v))


def _looks_like_header(line: str) -> bool:
    fields = _split(line)
    if len(fields) != 6:
        return False
    # a header has labels where the coordinates belong
    for text in fields[4:]:
        try:
            float(text)
        except ValueError:
            continue
        return False
    return True


def parse_tract_file(stream, strict: bool = True, rejected: list | None = None) -> list[TractRecord]:
    """Parse a tract file from a text stream (or a string).

    Blank lines are ignored and a non-numeric first line is taken as a
    header. In strict mode the first malformed line raises
    :class:`TractParseError`; otherwise malformed lines are logged,
    appended to ``rejected`` as errors, and skipped.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    records = []
    skipped = 0
    first = True
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        if first:
            first = False
            if _looks_like_header(line):
                continue
        try:
            records.append(parse_tract_line(line, line_no))
        except TractParseError as err:
            if strict:
                raise
            skipped += 1
            log.warning("skipping %s", err)
            if rejected is not None:
                rejected.append(err)
    log.info("parsed %d tract records, skipped %d", len(records), skipped)
    return records


def read_tract_file(path, strict: bool = True, rejected: list | None = None) -> list[TractRecord]:
    with open(path, encoding="utf-8", newline=None) as fh:
        return parse_tract_file(fh, strict=strict, rejected=rejected)


def format_tract_record(rec: TractRecord) -> str:
    """Inverse of :func:`parse_tract_line` for file-style values."""
    return ",".join([rec.state, rec.county, rec.tract, str(rec.population),
                     format(rec.center.lat_deg, "+"), repr(rec.center.lon_deg)])


def tract_arrays(records) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(lat, lon, population)`` arrays; raises if the population is zero."""
    if not records:
        raise ValueError("no tract records")
    lat = np.fromiter((r.center.lat_deg for r in records), float, len(records))
    lon = np.fromiter((r.center.lon_deg for r in records), float, len(records))
    pop = np.fromiter((r.population for r in records), float, len(records))
    if not pop.sum() > 0:
        raise ValueError("total population is zero")
    return lat, lon, pop


def mean_center(records) -> GeoCoordinate:
    """The census mean center of population.

    Latitude is the population-weighted mean latitude. Longitude is the
    population-weighted mean of ``lon * cos(lat)`` divided by the weighted
    mean of ``cos(lat)``.
    """
    lat, lon, pop = tract_arrays(records)
    c = pop * np.cos(np.radians(lat))
    # normalising the weights first keeps symmetric cases exact
    return GeoCoordinate(float((pop / pop.sum()) @ lat), float((c / c.sum()) @ lon))


def _median(values, weights) -> float:
    lo, hi = solve_hub_1d(values, weights)
    return 0.5 * (lo + hi)


def median_center(records) -> GeoCoordinate:
    """Weighted median latitude and weighted median longitude, taken
    independently; a median interval is reduced to its midpoint."""
    lat, lon, pop = tract_arrays(records)
    return GeoCoordinate(_median(lat, pop), _median(lon, pop))


def _geo_sites(records) -> np.ndarray:
    lat, lon, pop = tract_arrays(records)
    return np.column_stack([lat, lon, pop])


def population_hub(records, spec: GridSpec = CONUS_WINDOW,
                   earth: EarthModel = DEFAULT_EARTH) -> HubSolution:
    """Grid-search hub of the population; ``objective`` is the mean
    distance in miles from a person to the hub."""
    return grid_minimize(_geo_sites(records), spec, earth)


@dataclass
class LocationReport:
    labels: list[str]
    mean_distance: dict[str, float]
    pairwise: dict[tuple[str, str], float] = field(default_factory=dict)


def location_report(records, named_points: dict, earth: EarthModel = DEFAULT_EARTH) -> LocationReport:
    """Population-mean distance to each named point, and the distances
    between the points, with labels in sorted order."""
    sites = _geo_sites(records)
    labels = sorted(named_points)
    points = {k: v if isinstance(v, GeoCoordinate) else GeoCoordinate(*v)
              for k, v in named_points.items()}
    mean = {k: spherical_mean_distance(sites, points[k], earth) for k in labels}
    pairwise = {(a, b): great_circle_distance(points[a], points[b], earth)
                for i, a in enumerate(labels) for b in labels[i + 1:]}
    return LocationReport(labels, mean, pairwise)
