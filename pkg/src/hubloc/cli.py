"""Command-line interface.

Every subcommand prints a single document: JSON (stable key order), CSV
(``key,value`` rows) or aligned text. Degrees are printed with 6 decimal
places and miles with 3, so identical inputs give byte-identical output.
Text output shows western longitudes as positive numbers marked ``W``.

Exit codes: 0 success, 1 bad input, 2 solver did not converge, 64 usage.
"""
from __future__ import annotations

import argparse
import hashlib
import io
import json
import os
import sys
import tempfile
import time

import numpy as np

from . import census, euclidean, multihub, spherical
from .geometry import MEAN_EARTH_RADIUS_MILES, EarthModel, GeoCoordinate

__all__ = ["main", "run", "emit_grid_surface", "render"]

EXIT_OK, EXIT_INPUT, EXIT_CONVERGENCE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# ---------------------------------------------------------------- formatting

class _Fixed(float):
    places = 10

    def render(self) -> str:
        return f"{float(self):.{self.places}f}"


class Deg(_Fixed):
    places = 6


class Miles(_Fixed):
    places = 3


class Num(_Fixed):
    places = 10


class Millis(_Fixed):
    places = 3


class Geo:
    def __init__(self, g: GeoCoordinate):
        self.lat = Deg(g.lat_deg)
        self.lon = Deg(g.lon_deg)

    def as_dict(self):
        return {"lat_deg": self.lat, "lon_deg": self.lon}

    def text(self) -> str:
        ns = "S" if self.lat < 0 else "N"
        ew = "E" if self.lon > 0 else "W"
        return (f"{Deg(abs(self.lat)).render()} {ns}, "
                f"{Deg(abs(self.lon)).render()} {ew}")


def _json(value, indent=0) -> str:
    pad = "  " * (indent + 1)
    if isinstance(value, Geo):
        value = value.as_dict()
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        return "[" + ", ".join(_json(v, indent + 1) for v in value) + "]"
    if isinstance(value, _Fixed):
        return value.render()
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return Num(value).render()
    return json.dumps(str(value))


def _flatten(value, prefix=""):
    if isinstance(value, Geo):
        value = value.as_dict()
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, (list, tuple)) and any(isinstance(v, (dict, Geo, list, tuple)) for v in value):
        for i, v in enumerate(value):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, value


def _scalar_text(value) -> str:
    if isinstance(value, _Fixed):
        return value.render()
    if isinstance(value, (list, tuple)):
        return " ".join(_scalar_text(v) for v in value)
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return Num(value).render()
    return str(value)


def _text_rows(value, prefix=""):
    if isinstance(value, Geo):
        yield prefix, value.text()
    elif isinstance(value, dict):
        for k, v in value.items():
            yield from _text_rows(v, f"{prefix}.{k}" if prefix else str(k))
    else:
        yield prefix, _scalar_text(value)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return _json(doc) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write("key,value\n")
        for key, val in _flatten(doc):
            buf.write(f"{key},{_scalar_text(val)}\n")
        return buf.getvalue()
    rows = list(_text_rows(doc))
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


# ---------------------------------------------------------------- input

def _read_input(args) -> tuple[str, bytes]:
    """Return the text to parse and the raw bytes that are digested."""
    if getattr(args, "input", None):
        with open(args.input, "rb") as fh:
            raw = fh.read()
        return raw.decode("utf-8"), raw
    inline = getattr(args, "points", None) or getattr(args, "values", None)
    if inline:
        text = inline.replace(";", "\n")
        return text, inline.encode("utf-8")
    raise ValueError("no input: give --input PATH or inline points")


def _digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def _rows(text: str, min_cols: int, max_cols: int) -> np.ndarray:
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f for f in line.replace(",", " ").split()]
        if not min_cols <= len(fields) <= max_cols:
            raise ValueError(f"line {line_no}: expected {min_cols}-{max_cols} numbers, got {len(fields)}")
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise ValueError(f"line {line_no}: non-numeric field in {line!r}") from None
    if not rows:
        raise ValueError("input holds no rows")
    width = max(len(r) for r in rows)
    if any(len(r) != width for r in rows):
        raise ValueError("rows have inconsistent column counts")
    return np.array(rows)


def _sites_2d(text):
    arr = _rows(text, 2, 3)
    pts = arr[:, :2]
    w = arr[:, 2] if arr.shape[1] == 3 else np.ones(len(arr))
    return pts, w


def _tracts(args, raw_text):
    rejected = []
    records = census.parse_tract_file(io.StringIO(raw_text), strict=not args.lenient,
                                      rejected=rejected)
    return records, rejected


def _earth(args) -> EarthModel:
    return EarthModel(args.earth_radius)


def _grid(args, default_lat=(17.0, 72.0), default_lon=(-180.0, -65.0)) -> spherical.GridSpec:
    return spherical.GridSpec(
        lat_range=(args.lat_min if args.lat_min is not None else default_lat[0],
                   args.lat_max if args.lat_max is not None else default_lat[1]),
        lon_range=(args.lon_min if args.lon_min is not None else default_lon[0],
                   args.lon_max if args.lon_max is not None else default_lon[1]),
        step_deg=args.step, refine_levels=args.refine_levels,
        refine_factor=args.refine_factor)


def _options(args) -> euclidean.SolverOptions:
    return euclidean.SolverOptions(tolerance=args.tolerance, max_iterations=args.max_iterations)


def _coords(x) -> list:
    return [Num(v) for v in np.atleast_1d(x)]


def _hub_result(sol: euclidean.HubSolution) -> tuple[dict, dict]:
    result = {"location": _coords(sol.location), "objective": Num(sol.objective)}
    diag = {"status": str(sol.status), "iterations": sol.iterations,
            "gradient_norm": None if sol.gradient_norm is None else Num(sol.gradient_norm)}
    return result, diag


def _grid_result(sol: euclidean.HubSolution, spec) -> tuple[dict, dict]:
    result = {"location": Geo(sol.location), "mean_distance_miles": Miles(sol.objective)}
    diag = {"status": str(sol.status), "evaluations": sol.iterations,
            "level_objectives_miles": [Miles(v) for v in sol.trace],
            "step_deg": Deg(spec.step_deg), "refine_levels": spec.refine_levels}
    return result, diag


def emit_grid_surface(records, spec: spherical.GridSpec, earth: EarthModel, out) -> int:
    """Write ``lat,lon,mean_distance_miles`` rows for every coarse grid node,
    latitude-major. ``records`` are tract records or site rows accepted by
    :mod:`hubloc.spherical`. Returns the number of rows written."""
    if len(records) and isinstance(records[0], census.TractRecord):
        lat, lon, pop = census.tract_arrays(records)
        records = np.column_stack([lat, lon, pop])
    lats, lons, values = spherical.grid_surface(records, spec, earth)
    out.write("lat,lon,mean_distance_miles\n")
    for i, la in enumerate(lats):
        for j, lo in enumerate(lons):
            out.write(f"{Deg(la).render()},{Deg(lo).render()},{Miles(values[i, j]).render()}\n")
    return values.size


def _write_atomic(path, text):
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".surface-")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _maybe_surface(args, sites, spec, earth):
    if args.surface_out:
        buf = io.StringIO()
        emit_grid_surface(sites, spec, earth, buf)
        _write_atomic(args.surface_out, buf.getvalue())


# ---------------------------------------------------------------- commands

def cmd_hub(args):
    text, raw = _read_input(args)
    pts, w = _sites_2d(text)
    result, diag = _hub_result(euclidean.solve_hub_weiszfeld(pts, w, _options(args)))
    return raw, result, diag


def cmd_hub1d(args):
    text, raw = _read_input(args)
    arr = _rows(text.replace(",", "\n") if args.values else text, 1, 2)
    values = arr[:, 0]
    weights = arr[:, 1] if arr.shape[1] == 2 else None
    if args.weights:
        weights = [float(x) for x in args.weights.split(",")]
    lo, hi = euclidean.solve_hub_1d(values, weights)
    return raw, {"interval": [Num(lo), Num(hi)], "midpoint": Num(0.5 * (lo + hi))}, {}


def _exact(args, count, solver):
    text, raw = _read_input(args)
    pts, w = _sites_2d(text)
    if len(pts) != count or np.any(w != 1):
        raise ValueError(f"expected exactly {count} unweighted points")
    result, diag = _hub_result(solver(*pts))
    return raw, result, diag


def cmd_fermat3(args):
    return _exact(args, 3, euclidean.fermat_point_triangle)


def cmd_hub4(args):
    return _exact(args, 4, euclidean.hub_of_four)


def cmd_sphere_hub(args):
    text, raw = _read_input(args)
    sites = _rows(text, 2, 3)
    spec = _grid(args, (-90.0, 90.0), (-180.0, 180.0))
    earth = _earth(args)
    sol = spherical.grid_minimize(sites, spec, earth)
    _maybe_surface(args, sites, spec, earth)
    result, diag = _grid_result(sol, spec)
    return raw, result, diag


def cmd_census_mean_center(args):
    text, raw = _read_input(args)
    records, rejected = _tracts(args, text)
    g = census.mean_center(records)
    return raw, {"mean_center": Geo(g)}, {"records": len(records), "rejected": len(rejected)}


def cmd_census_median_center(args):
    text, raw = _read_input(args)
    records, rejected = _tracts(args, text)
    g = census.median_center(records)
    return raw, {"median_center": Geo(g)}, {"records": len(records), "rejected": len(rejected)}


def cmd_census_hub(args):
    text, raw = _read_input(args)
    records, rejected = _tracts(args, text)
    spec = _grid(args)
    earth = _earth(args)
    sol = census.population_hub(records, spec, earth)
    _maybe_surface(args, records, spec, earth)
    result, diag = _grid_result(sol, spec)
    diag.update(records=len(records), rejected=len(rejected))
    return raw, result, diag


def _named_point(spec: str):
    label, sep, coords = spec.partition("=")
    if not sep or not label:
        raise ValueError(f"--point expects LABEL=LAT,LON, got {spec!r}")
    try:
        lat, lon = (float(x) for x in coords.split(","))
    except ValueError:
        raise ValueError(f"--point expects LABEL=LAT,LON, got {spec!r}") from None
    return label, GeoCoordinate(lat, lon)


def cmd_census_report(args):
    text, raw = _read_input(args)
    records, rejected = _tracts(args, text)
    earth = _earth(args)
    points = {"memphis": GeoCoordinate(35.0, -90.0),
              "mean_center": census.mean_center(records),
              "median_center": census.median_center(records)}
    if args.with_hub:
        points["hub"] = census.population_hub(records, _grid(args), earth).location
    points.update(_named_point(p) for p in args.point or [])
    rep = census.location_report(records, points, earth)
    result = {
        "points": {k: Geo(points[k]) for k in rep.labels},
        "mean_distance_miles": {k: Miles(rep.mean_distance[k]) for k in rep.labels},
        "pairwise_miles": {f"{a}~{b}": Miles(d) for (a, b), d in rep.pairwise.items()},
    }
    return raw, result, {"records": len(records), "rejected": len(rejected)}


def cmd_two_hub_uniform(args):
    q = multihub.QuadratureSpec(args.nodes, args.rule)
    sol = multihub.optimize_two_hub_uniform(q, args.multistart, args.seed, same_hub=args.same_hub)
    raw = f"nodes={args.nodes};rule={args.rule}".encode()
    result = {"hubs": [Num(sol.hub_a), Num(sol.hub_b)], "expected_cost": Num(sol.expected_cost)}
    diag = {"status": sol.status, "starts_tried": sol.starts_tried, "best_start": sol.best_start}
    return raw, result, diag


def cmd_two_hub(args):
    text, raw = _read_input(args)
    arr = _rows(text, 1, 3)
    if arr.shape[1] == 1:
        pts, w = arr, np.ones(len(arr))
    else:
        pts, w = _sites_2d(text)
    sol = multihub.optimize_two_hub_discrete(pts, w, args.multistart, args.seed)
    result = {"hubs": [_coords(sol.hub_a), _coords(sol.hub_b)],
              "expected_cost": Num(sol.expected_cost)}
    diag = {"status": sol.status, "starts_tried": sol.starts_tried, "best_start": sol.best_start}
    return raw, result, diag


# ---------------------------------------------------------------- parser

def _common(p, inline=None):
    p.add_argument("--input", metavar="PATH", help="input file")
    if inline:
        p.add_argument("--" + inline, help="inline data, rows separated by ';'")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--earth-radius", type=float, default=MEAN_EARTH_RADIUS_MILES, metavar="MILES")
    p.add_argument("--timing", action="store_true", help="add runtime_ms to diagnostics")


def _grid_flags(p, step=1.0):
    p.add_argument("--lat-min", type=float)
    p.add_argument("--lat-max", type=float)
    p.add_argument("--lon-min", type=float)
    p.add_argument("--lon-max", type=float)
    p.add_argument("--step", type=float, default=step)
    p.add_argument("--refine-levels", type=int, default=3)
    p.add_argument("--refine-factor", type=float, default=10.0)


def _solver_flags(p):
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--max-iterations", type=int, default=10_000)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hubloc", description="Minimum-average-distance hub solvers.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("hub", help="weighted hub of planar sites (x,y[,weight] rows)")
    _common(p, "points")
    _solver_flags(p)
    p.set_defaults(func=cmd_hub)

    p = sub.add_parser("hub1d", help="weighted median interval on a line")
    _common(p, "values")
    p.add_argument("--weights", help="comma-separated weights for --values")
    p.set_defaults(func=cmd_hub1d)

    p = sub.add_parser("fermat3", help="hub of three planar points")
    _common(p, "points")
    p.set_defaults(func=cmd_fermat3)

    p = sub.add_parser("hub4", help="hub of four planar points")
    _common(p, "points")
    p.set_defaults(func=cmd_hub4)

    p = sub.add_parser("sphere-hub", help="grid hub of lat,lon[,weight] sites")
    _common(p, "points")
    _grid_flags(p)
    p.add_argument("--surface-out", metavar="PATH", help="write the coarse grid surface as CSV")
    p.set_defaults(func=cmd_sphere_hub)

    for name, func in (("census-mean-center", cmd_census_mean_center),
                       ("census-median-center", cmd_census_median_center)):
        p = sub.add_parser(name, help="tract file statistic")
        _common(p)
        p.add_argument("--lenient", action="store_true", help="skip malformed lines")
        p.set_defaults(func=func)

    p = sub.add_parser("census-hub", help="population hub of a tract file")
    _common(p)
    p.add_argument("--lenient", action="store_true")
    _grid_flags(p)
    p.add_argument("--surface-out", metavar="PATH")
    p.set_defaults(func=cmd_census_hub)

    p = sub.add_parser("census-report", help="mean distances to named points")
    _common(p)
    p.add_argument("--lenient", action="store_true")
    p.add_argument("--point", action="append", metavar="LABEL=LAT,LON")
    p.add_argument("--with-hub", action="store_true", help="also compute and include the hub")
    _grid_flags(p)
    p.set_defaults(func=cmd_census_report)

    p = sub.add_parser("two-hub-uniform", help="two hubs for the uniform distribution on [0,1]")
    _common(p)
    p.add_argument("--nodes", type=int, default=512)
    p.add_argument("--rule", choices=("midpoint", "gauss"), default="midpoint")
    p.add_argument("--multistart", type=int, default=4)
    p.add_argument("--same-hub", action="store_true", help="force both hubs to coincide")
    p.set_defaults(func=cmd_two_hub_uniform)

    p = sub.add_parser("two-hub", help="two hubs for weighted sites")
    _common(p, "points")
    p.add_argument("--multistart", type=int, default=8)
    p.set_defaults(func=cmd_two_hub)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        stderr.write(f"{err}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    start = time.perf_counter()
    code = EXIT_OK
    try:
        raw, result, diag = args.func(args)
    except euclidean.ConvergenceError as err:
        stderr.write(f"hubloc: {err}\n")
        raw = _read_input(args)[1]
        result, diag = _hub_result(err.best)
        code = EXIT_CONVERGENCE
    except (ValueError, OSError, UnicodeDecodeError) as err:
        stderr.write(f"hubloc: {err}\n")
        return EXIT_INPUT
    if args.timing:
        diag["runtime_ms"] = Millis((time.perf_counter() - start) * 1000.0)
    doc = {"command": args.command, "inputs_digest": _digest(raw),
           "result": result, "diagnostics": diag}
    stdout.write(render(doc, args.format))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
