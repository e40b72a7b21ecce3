"""
When the sphere has no single hub
=================================

In the plane the hub is unique unless the points are collinear. On the
sphere, ties are ordinary: two people at the poles are equally well
served from anywhere on the equator, and two people anywhere are served
equally well from any point on the short arc between them.
"""
import numpy as np

from hubloc.geometry import from_unit_vector, great_circle_distance, to_unit_vector
from hubloc.spherical import GridSpec, grid_minimize, spherical_mean_distance

poles = [(90, 0), (-90, 0)]
values = [spherical_mean_distance(poles, (0, lon)) for lon in range(-180, 180, 30)]
print("poles, mean distance from the equator:", np.round(values, 3))

pair = [(35, -120), (35, -80)]
a, b = (to_unit_vector(p) for p in pair)
for t in np.linspace(0, 1, 5):
    # walk along the great circle from one person to the other
    g = from_unit_vector((1 - t) * a + t * b)
    print(f"  at ({g.lat_deg:.2f}, {g.lon_deg:.2f}): {spherical_mean_distance(pair, g):.3f} mi")
sol = grid_minimize(pair, GridSpec((30, 40), (-125, -75)))
print("the grid search settles on", sol.location, f"({sol.objective:.3f} mi)")
print("which ties half the arc length:", round(great_circle_distance(*pair) / 2, 3))

# Three people spaced evenly around a small circle near the equator: the
# centroid direction is a poor hub, and each person's own spot is best.
ring = [(1, 0), (1, 120), (1, -120)]
print("\nat a person:", round(spherical_mean_distance(ring, (1, 0)), 2))
print("north pole: ", round(spherical_mean_distance(ring, (90, 0)), 2))
print("south pole: ", round(spherical_mean_distance(ring, (-90, 0)), 2))
