"""
Hubs of a few points in the plane
=================================

The hub of a set of points minimises the sum of distances to them. For
three points it is the Fermat point, for four it is where the diagonals
cross, and beyond that we iterate.
"""
import math

import numpy as np

from hubloc.euclidean import (fermat_point_triangle, hub_of_four, solve_hub_1d,
                              solve_hub_weiszfeld)

# On a line the hub is a median, and with an even count any point between
# the two middle values will do.
print("median interval of 1,2,3,4:", solve_hub_1d([1, 2, 3, 4]))
print("with weight 5 on the 4:   ", solve_hub_1d([1, 2, 3, 4], [1, 1, 1, 5]))

# An acute triangle: every side is seen from the hub under 120 degrees,
# so the three unit vectors pointing at the vertices cancel.
a, b, c = np.array([0.0, 0.0]), np.array([4.0, 0.0]), np.array([1.0, 3.0])
fp = fermat_point_triangle(a, b, c).location
units = [(p - fp) / np.linalg.norm(p - fp) for p in (a, b, c)]
print("Fermat point:", fp, " unit vector sum:", np.linalg.norm(sum(units)))

# An obtuse triangle with a 150 degree angle: the hub is that vertex.
wide = fermat_point_triangle([0, 0], [1, 0], [math.cos(math.radians(150)), math.sin(math.radians(150))])
print("150 degree triangle ->", wide.location, wide.status.value)

# Four points: diagonals of a convex quadrilateral, or the inner point.
print("kite hub:", hub_of_four([0, 0], [3, 1], [4, 4], [1, 3]).location)
print("inner point hub:", hub_of_four([0, 0], [4, 0], [2, 4], [2, 1]).location)

# Anything larger goes to the iterative solver.
rng = np.random.default_rng(1)
pts = rng.random((12, 2))
sol = solve_hub_weiszfeld(pts)
print(f"12 random points: hub {sol.location}, total distance {sol.objective:.6f}, "
      f"{sol.iterations} iterations")
