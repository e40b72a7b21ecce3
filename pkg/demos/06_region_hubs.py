"""
Hubs of whole regions
=====================

For a population spread evenly over a region we sample it and solve the
sampled problem. Symmetric regions have their hub at the center; a
lopsided one need not agree with its centroid.
"""
import numpy as np

from hubloc.euclidean import monte_carlo_region_hub
from hubloc.regions import Ellipse, Polygon, Rectangle, Rhombus

shapes = {
    "rectangle 4 x 1": Rectangle((0, 0), 4, 1),
    "rhombus": Rhombus((0, 0), (2, 1)),
    "ellipse": Ellipse((5, 5), (3, 1)),
}
for name, shape in shapes.items():
    sol = monte_carlo_region_hub(shape, 200_000, seed=0)
    print(f"{name:16s} hub {np.round(sol.location, 4)}")

# An L-shaped region: the hub and the centroid differ.
ell = Polygon(((0, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3)))
sample = ell.sample(200_000, np.random.Generator(np.random.PCG64(0)))
hub = monte_carlo_region_hub(ell, 200_000, seed=0).location
print("L shape centroid", np.round(sample.mean(axis=0), 4), " hub", np.round(hub, 4))
