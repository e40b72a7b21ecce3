"""Hubs: points of minimum average distance to a weighted population.

Euclidean solvers live in :mod:`hubloc.euclidean`, spherical grid search
in :mod:`hubloc.spherical`, census tract handling in :mod:`hubloc.census`
and the two-hub problem in :mod:`hubloc.multihub`.
"""
from .euclidean import (ConvergenceError, HubSolution, SolverOptions, Status, WeightedSite,
                        distance_gradient, fermat_point_triangle, hub_of_four,
                        monte_carlo_region_hub, solve_hub_1d, solve_hub_weiszfeld,
                        total_distance, vertex_optimality)
from .geometry import (DEFAULT_EARTH, EarthModel, GeoCoordinate, geodesic_midpoint,
                       great_circle_distance, to_unit_vector)
from .spherical import GeoSite, GridSpec, grid_minimize, spherical_mean_distance
from .census import (TractRecord, location_report, mean_center, median_center,
                     parse_tract_file, population_hub)
from .multihub import (QuadratureSpec, TwoHubSolution, optimize_two_hub_discrete,
                       optimize_two_hub_uniform, pair_route_cost, two_hub_cost_discrete,
                       two_hub_cost_uniform)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "HubSolution", "SolverOptions", "Status", "WeightedSite",
    "distance_gradient", "fermat_point_triangle", "hub_of_four", "monte_carlo_region_hub",
    "solve_hub_1d", "solve_hub_weiszfeld", "total_distance", "vertex_optimality",
    "DEFAULT_EARTH", "EarthModel", "GeoCoordinate", "geodesic_midpoint",
    "great_circle_distance", "to_unit_vector",
    "GeoSite", "GridSpec", "grid_minimize", "spherical_mean_distance",
    "TractRecord", "location_report", "mean_center", "median_center", "parse_tract_file",
    "population_hub",
    "QuadratureSpec", "TwoHubSolution", "optimize_two_hub_discrete", "optimize_two_hub_uniform",
    "pair_route_cost", "two_hub_cost_discrete", "two_hub_cost_uniform",
]
