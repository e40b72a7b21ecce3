"""
The population hub of a tract file
==================================

Pass a census tract file (state, county, tract, population, lat, lon per
line). Without an argument the seven sample tracts from the test data
are used, which makes for a quick but unrepresentative run.

    python3 demos/03_census_hub.py path/to/tracts.csv
"""
import sys
from pathlib import Path

from hubloc.census import (location_report, mean_center, median_center, population_hub,
                           read_tract_file)
from hubloc.geometry import format_coordinate
from hubloc.spherical import GridSpec

path = sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parents[1] / "tests" / "data" / "sample_tracts.csv"
tracts = read_tract_file(path, strict=False)
print(f"{len(tracts)} tracts, {sum(t.population for t in tracts):,} people")

mc = mean_center(tracts)
md = median_center(tracts)
print("mean center:  ", format_coordinate(mc, places=4))
print("median center:", format_coordinate(md, places=5))

# A one degree scan over the country, then three refinements.
coarse = population_hub(tracts, GridSpec(refine_levels=0))
fine = population_hub(tracts)
print(f"hub on the 1 degree grid: {format_coordinate(coarse.location, places=0)}, "
      f"{coarse.objective:.1f} mi on average")
print(f"refined hub: {format_coordinate(fine.location, places=3)}, {fine.objective:.1f} mi")

report = location_report(tracts, {"hub": fine.location, "mean center": mc,
                                  "median center": md, "Memphis": (35, -90)})
print("\naverage distance from a person:")
for label in report.labels:
    print(f"  {label:14s} {report.mean_distance[label]:8.1f} mi")
print("distances between the points:")
for (a, b), d in report.pairwise.items():
    print(f"  {a} - {b}: {d:.1f} mi")
