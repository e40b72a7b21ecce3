"""
Two hubs on a line
==================

Senders and receivers are spread uniformly over [0, 1], and each package
goes through whichever of two hubs makes the shorter trip. One hub in the
middle gives an expected trip of 1/2; two hubs do better, and nothing
beats the direct trip length of 1/3.
"""
import numpy as np

from hubloc.multihub import (QuadratureSpec, optimize_two_hub_uniform,
                             two_hub_cost_uniform)

print("one hub at 0.5:      ", round(two_hub_cost_uniform(0.5, 0.5), 5))
print("hubs at 0.25, 0.75:  ", round(two_hub_cost_uniform(0.25, 0.75), 5))

best = optimize_two_hub_uniform()
print(f"best pair: ({best.hub_a:.4f}, {best.hub_b:.4f}), expected trip {best.expected_cost:.5f}")

# The cost is symmetric under u, v -> 1 - v, 1 - u, and the optimum sits
# close to 1 - 1/sqrt(2) = 0.2929 and its mirror image.
print("1 - 1/sqrt(2) =", round(1 - 1 / np.sqrt(2), 4))

# A slice of the cost surface along symmetric pairs (u, 1 - u).
for u in np.arange(0.20, 0.41, 0.02):
    print(f"  u = {u:.2f}: {two_hub_cost_uniform(u, 1 - u, QuadratureSpec(1024)):.5f}")
