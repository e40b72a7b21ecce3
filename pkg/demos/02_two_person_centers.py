"""
Two people, three centers
=========================

One person lives at (35N, 120W) and one at (35N, 80W). The census-style
mean center averages latitude and longitude; the point halfway along the
great circle between them is further north.
"""
from hubloc.census import TractRecord, mean_center
from hubloc.geometry import (GeoCoordinate, format_coordinate, geodesic_midpoint,
                             great_circle_distance)

people = [TractRecord("01", "001", "000100", 1, GeoCoordinate(35, -120)),
          TractRecord("01", "001", "000200", 1, GeoCoordinate(35, -80))]

center = mean_center(people)
middle = geodesic_midpoint((35, -120), (35, -80))
print("mean center:      ", format_coordinate(center, places=1))
print("geodesic midpoint:", format_coordinate(middle, places=2))
print(f"they are {great_circle_distance(center, middle):.0f} miles apart")

# Each person is the same distance from the midpoint, and the sum is the
# length of the arc between them, which no other point can beat.
for p in people:
    print(f"  {format_coordinate(p.center, places=0)} -> midpoint "
          f"{great_circle_distance(p.center, middle):.1f} mi")
