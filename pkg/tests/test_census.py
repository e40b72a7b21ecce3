import io
import logging

import numpy as np
import pytest

from hubloc.census import (TractParseError, TractRecord, format_tract_record, location_report,
                           mean_center, median_center, parse_tract_file, population_hub)
from hubloc.geometry import GeoCoordinate, great_circle_distance
from hubloc.spherical import GridSpec, spherical_mean_distance
from oracles import haversine_miles, sphere_grid_hub, weighted_median_scan


def tract(lat, lon, pop, tract_id="000100"):
    return TractRecord("01", "001", tract_id, pop, GeoCoordinate(lat, lon))


def test_parse_sample_lines(sample_tract_text):
    recs = parse_tract_file(io.StringIO(sample_tract_text))
    assert len(recs) == 7
    first = recs[0]
    assert (first.state, first.county, first.tract, first.population) == ("06", "077", "005404", 6511)
    assert (first.center.lat_deg, first.center.lon_deg) == (37.732419, -121.425296)
    fourth = recs[3]
    assert fourth.population == 8787
    assert (fourth.center.lat_deg, fourth.center.lon_deg) == (35.634833, -120.69533)


def test_parse_round_trip(sample_tract_text):
    lines = sample_tract_text.splitlines()
    recs = parse_tract_file(sample_tract_text)
    assert [format_tract_record(r) for r in recs] == lines


def test_parse_strict_reports_line_number(sample_tract_text):
    bad = sample_tract_text + "06,077,bad,XX,1,2\n"
    with pytest.raises(TractParseError) as info:
        parse_tract_file(bad)
    assert info.value.line_no == 8


def test_parse_lenient_skips_and_logs(sample_tract_text, caplog):
    bad = "06,077,bad,XX,1,2\n" + sample_tract_text + "1,2,3\n06,001,000100,5,95.0,-100\n"
    rejected = []
    with caplog.at_level(logging.WARNING):
        recs = parse_tract_file(bad, strict=False, rejected=rejected)
    assert len(recs) == 7
    assert [e.line_no for e in rejected] == [1, 9, 10]
    assert "line 9" in caplog.text


@pytest.mark.parametrize("line", [
    "06,077,005404,6511,+37.7,-181",
    "06,077,005404,6511,91,-100",
    "06,077,005404,-5,37,-100",
    "06,077,005404,6511,abc,-100",
    "06,077,005404,6511,37",
])
def test_parse_rejects(line):
    with pytest.raises(TractParseError):
        parse_tract_file(line)


def test_parse_header_crlf_and_whitespace(sample_tract_text):
    text = "STATE,COUNTY,TRACT,POP,LAT,LON\r\n" + sample_tract_text.replace("\n", "\r\n")
    assert len(parse_tract_file(text)) == 7
    spaced = sample_tract_text.replace(",", " ")
    recs = parse_tract_file(spaced)
    assert recs[0].tract == "005404"


def test_mean_center_two_persons():
    g = mean_center([tract(35, -120, 1), tract(35, -80, 1)])
    assert (g.lat_deg, g.lon_deg) == (35.0, -100.0)


def test_mean_center_single_and_resummation():
    assert mean_center([tract(40.5, -90.25, 7)]) == GeoCoordinate(40.5, -90.25)
    rng = np.random.default_rng(1)
    recs = [tract(rng.uniform(25, 48), rng.uniform(-124, -67), int(rng.integers(1, 9000))) for _ in range(50)]
    num = sum(r.population * r.center.lat_deg for r in recs)
    den = sum(r.population for r in recs)
    assert mean_center(recs).lat_deg == pytest.approx(num / den, rel=1e-12)


def test_centers_need_population():
    with pytest.raises(ValueError):
        mean_center([tract(1, 1, 0)])
    with pytest.raises(ValueError):
        median_center([])


def test_median_center_examples():
    recs = [tract(30, -80, 1), tract(40, -90, 1), tract(50, -100, 1)]
    assert median_center(recs) == GeoCoordinate(40, -90)
    recs = [tract(30, -80, 1), tract(40, -90, 3)]
    assert median_center(recs).lat_deg == 40
    lo, hi = weighted_median_scan([30, 40], [1, 3])
    assert lo == hi == pytest.approx(40)


def test_median_center_interval_midpoint():
    recs = [tract(30, -80, 1), tract(40, -90, 1)]
    assert median_center(recs) == GeoCoordinate(35, -85)


def test_median_center_halves():
    rng = np.random.default_rng(6)
    recs = [tract(rng.uniform(25, 48), rng.uniform(-124, -67), int(rng.integers(0, 5000))) for _ in range(80)]
    g = median_center(recs)
    total = sum(r.population for r in recs)
    north = sum(r.population for r in recs if r.center.lat_deg > g.lat_deg)
    south = sum(r.population for r in recs if r.center.lat_deg < g.lat_deg)
    east = sum(r.population for r in recs if r.center.lon_deg > g.lon_deg)
    west = sum(r.population for r in recs if r.center.lon_deg < g.lon_deg)
    assert max(north, south, east, west) <= total / 2


def test_statistics_permutation_and_duplication():
    rng = np.random.default_rng(8)
    recs = [tract(rng.uniform(30, 45), rng.uniform(-110, -80), int(rng.integers(1, 500))) for _ in range(12)]
    spec = GridSpec((25, 50), (-115, -75), 1.0, 2, 10)
    ref = (mean_center(recs), median_center(recs), population_hub(recs, spec).location)
    shuffled = [recs[i] for i in rng.permutation(len(recs))]
    got = (mean_center(shuffled), median_center(shuffled), population_hub(shuffled, spec).location)
    for a, b in zip(ref, got):
        assert a.lat_deg == pytest.approx(b.lat_deg, abs=1e-12)
        assert a.lon_deg == pytest.approx(b.lon_deg, abs=1e-12)
    doubled = recs + recs
    got = (mean_center(doubled), median_center(doubled), population_hub(doubled, spec).location)
    for a, b in zip(ref, got):
        assert a.lat_deg == pytest.approx(b.lat_deg, abs=1e-12)
        assert a.lon_deg == pytest.approx(b.lon_deg, abs=1e-12)


def test_all_at_one_point():
    recs = [tract(38.0, -87.0, 10), tract(38.0, -87.0, 25)]
    spec = GridSpec((30, 45), (-95, -80), 1.0, 3, 10)
    hub = population_hub(recs, spec)
    assert mean_center(recs) == median_center(recs) == hub.location == GeoCoordinate(38, -87)
    assert hub.objective == 0


def test_population_hub_single_tract():
    hub = population_hub([tract(35.25, -101.5, 3)], GridSpec((30, 40), (-105, -95), 1.0, 3, 10))
    assert (hub.location.lat_deg, hub.location.lon_deg) == pytest.approx((35.25, -101.5), abs=1e-9)


def test_population_hub_against_fine_grid():
    rng = np.random.default_rng(10)
    recs = [tract(rng.uniform(33, 42), rng.uniform(-100, -85), int(rng.integers(100, 10000))) for _ in range(10)]
    hub = population_hub(recs, GridSpec((25, 50), (-110, -75), 1.0, 3, 10))
    sites = [(r.center.lat_deg, r.center.lon_deg, r.population) for r in recs]
    (lat, lon), fref = sphere_grid_hub(sites, (33, 42), (-100, -85), 0.01, 3958.7613)
    assert hub.objective <= fref + 1e-6
    assert abs(hub.location.lat_deg - lat) <= 0.01 + 1e-9
    assert abs(hub.location.lon_deg - lon) <= 0.01 + 1e-9


def test_location_report(sample_tract_text):
    recs = parse_tract_file(sample_tract_text)
    points = {"memphis": (35, -90), "hub": (39, -87), "center": (37.7, -91.8)}
    rep = location_report(recs, points)
    assert rep.labels == ["center", "hub", "memphis"]
    assert list(rep.pairwise) == [("center", "hub"), ("center", "memphis"), ("hub", "memphis")]
    assert rep.pairwise[("hub", "memphis")] == pytest.approx(great_circle_distance((39, -87), (35, -90)))
    sites = [(r.center.lat_deg, r.center.lon_deg, r.population) for r in recs]
    assert rep.mean_distance["memphis"] == pytest.approx(spherical_mean_distance(sites, (35, -90)))
    assert rep.pairwise[("hub", "memphis")] == pytest.approx(haversine_miles((39, -87), (35, -90), 3958.7613), rel=1e-9)
    assert rep.pairwise[("center", "hub")] == pytest.approx(275, abs=5)
