import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hubloc.euclidean import solve_hub_weiszfeld
from hubloc.multihub import (QuadratureSpec, compass_search, expected_route_cost,
                             optimize_two_hub_discrete, optimize_two_hub_uniform,
                             pair_route_cost, two_hub_cost_discrete, two_hub_cost_uniform)
from oracles import two_hub_double_sum

unit = st.floats(0, 1, allow_nan=False)


def test_pair_route_cost_examples():
    assert pair_route_cost(0.1, 0.2, 0.25, 0.75) == pytest.approx(0.2)
    assert pair_route_cost(0.9, 0.8, 0.25, 0.75) == pytest.approx(0.2)
    assert pair_route_cost(0.1, 0.9, 0.25, 0.75) == pytest.approx(0.8)
    assert pair_route_cost((0, 0), (2, 0), (1, 1), (5, 5)) == pytest.approx(2 * np.sqrt(2))


@given(unit, unit, unit, unit)
def test_pair_route_cost_symmetry(x, y, u, v):
    c = pair_route_cost(x, y, u, v)
    assert c == pytest.approx(pair_route_cost(y, x, u, v))
    assert c == pytest.approx(pair_route_cost(x, y, v, u))
    assert c >= abs(x - y) - 1e-12


def test_uniform_cost_values():
    assert two_hub_cost_uniform(0.5, 0.5) == pytest.approx(0.5, abs=1e-5)
    assert two_hub_cost_uniform(0.29, 0.71) == pytest.approx(0.39, abs=0.005)


@settings(max_examples=40, deadline=None)
@given(unit, unit)
def test_uniform_cost_symmetries(u, v):
    f = two_hub_cost_uniform(u, v)
    assert two_hub_cost_uniform(v, u) == pytest.approx(f, abs=1e-9)
    assert two_hub_cost_uniform(1 - v, 1 - u) == pytest.approx(f, abs=1e-9)
    assert f >= 1 / 3 - 1e-4


def test_uniform_cost_quadrature_refinement():
    for u, v in [(0.29, 0.71), (0.1, 0.6), (0.5, 0.5)]:
        coarse = two_hub_cost_uniform(u, v, QuadratureSpec(512))
        fine = two_hub_cost_uniform(u, v, QuadratureSpec(4096))
        assert abs(coarse - fine) < 1e-4
        gauss = two_hub_cost_uniform(u, v, QuadratureSpec(512, "gauss"))
        assert abs(gauss - fine) < 1e-4


def test_uniform_cost_out_of_range():
    with pytest.raises(ValueError):
        two_hub_cost_uniform(-0.1, 0.5)
    with pytest.raises(ValueError):
        two_hub_cost_uniform(0.5, 1.2)
    with pytest.raises(ValueError):
        QuadratureSpec(1)
    with pytest.raises(ValueError):
        QuadratureSpec(8, "simpson")


def test_prefix_sum_matches_double_sum():
    rng = np.random.default_rng(3)
    for trial in range(20):
        k = int(rng.integers(1, 30))
        pts = rng.normal(size=(k, 2))
        w = rng.random(k)
        if trial % 3 == 0:
            w = np.round(w * 4)
            w[0] += 1
        u, v = rng.normal(size=2), rng.normal(size=2)
        fast = two_hub_cost_discrete(pts, u, v, w)
        assert fast == pytest.approx(two_hub_double_sum(pts, w, u, v), rel=1e-12, abs=1e-14)


def test_prefix_sum_handles_ties():
    # every difference D is zero: both routes equal
    to = np.array([1.0, 2.0, 3.0])
    assert expected_route_cost(to, to, np.ones(3)) == pytest.approx(4.0)


def test_discrete_examples():
    assert two_hub_cost_discrete([[0.0], [1.0]], 0.0, 1.0) == pytest.approx(0.5)
    pts = np.array([[0, 0], [3, 0], [0, 4]], float)
    hub = np.array([1.0, 1.0])
    mean = np.linalg.norm(pts - hub, axis=1).mean()
    assert two_hub_cost_discrete(pts, hub, hub) == pytest.approx(2 * mean)
    with pytest.raises(ValueError):
        two_hub_cost_discrete(pts, [0.0], [1.0, 1.0])


def test_compass_search_quadratic():
    x, f, ok = compass_search(lambda p: float(((p - 0.3) ** 2).sum()), [0.9, 0.9],
                              np.zeros(2), np.ones(2), 0.1, 1e-7)
    assert ok
    assert x == pytest.approx([0.3, 0.3], abs=1e-6)


@pytest.fixture(scope="module")
def uniform_solution():
    return optimize_two_hub_uniform()


def test_uniform_optimizer(uniform_solution):
    s = uniform_solution
    assert s.hub_a <= s.hub_b
    assert abs(s.hub_a - 0.29) <= 0.01 and abs(s.hub_b - 0.71) <= 0.01
    assert s.expected_cost == pytest.approx(0.39, abs=0.005)
    assert abs(s.hub_a + s.hub_b - 1) <= 2e-3
    assert s.status == "converged"


def test_uniform_optimizer_is_seeded(uniform_solution):
    again = optimize_two_hub_uniform()
    assert (again.hub_a, again.hub_b, again.expected_cost) == (
        uniform_solution.hub_a, uniform_solution.hub_b, uniform_solution.expected_cost)


def test_uniform_single_hub():
    s = optimize_two_hub_uniform(same_hub=True)
    assert s.hub_a == s.hub_b == pytest.approx(0.5, abs=1e-3)
    assert s.expected_cost == pytest.approx(0.5, abs=1e-5)


def pair_grid_oracle(pts, w, step=1e-3):
    xs = np.arange(pts.min(), pts.max() + step / 2, step)
    best = (np.inf, None)
    for i, u in enumerate(xs[::10]):
        for v in xs[::10][i:]:
            f = two_hub_double_sum(pts, w, [u], [v])
            if f < best[0]:
                best = (f, (u, v))
    # refine around the coarse winner at full resolution
    u0, v0 = best[1]
    for u in np.arange(u0 - 0.01, u0 + 0.01 + step / 2, step):
        for v in np.arange(v0 - 0.01, v0 + 0.01 + step / 2, step):
            f = two_hub_double_sum(pts, w, [u], [v])
            if f < best[0]:
                best = (f, (u, v))
    return best


def test_discrete_optimizer_four_points():
    pts = np.array([[0], [1 / 3], [2 / 3], [1]], float)
    s = optimize_two_hub_discrete(pts)
    fref, _ = pair_grid_oracle(pts, np.ones(4))
    assert s.expected_cost <= fref + 1e-6
    assert s.expected_cost == pytest.approx(two_hub_cost_discrete(pts, s.hub_a, s.hub_b))


def test_discrete_optimizer_vs_grid_random():
    rng = np.random.default_rng(12)
    for _ in range(3):
        pts = rng.random((7, 1))
        w = rng.integers(1, 5, 7).astype(float)
        s = optimize_two_hub_discrete(pts, w)
        fref, _ = pair_grid_oracle(pts, w)
        assert s.expected_cost <= fref + 1e-6


def test_discrete_optimizer_2d_beats_single_hub():
    rng = np.random.default_rng(5)
    pts = np.vstack([rng.normal((0, 0), 0.3, (10, 2)), rng.normal((5, 0), 0.3, (10, 2))])
    s = optimize_two_hub_discrete(pts)
    single = solve_hub_weiszfeld(pts).location
    assert s.expected_cost <= two_hub_cost_discrete(pts, single, single) + 1e-12
    # two well separated clusters: one hub near each
    hubs = sorted([np.asarray(s.hub_a), np.asarray(s.hub_b)], key=lambda h: h[0])
    assert hubs[0][0] < 1.5 and hubs[1][0] > 3.5


def test_discrete_optimizer_symmetric_sites():
    pts = np.array([[-2, 0], [-1, 0], [1, 0], [2, 0]], float)
    s = optimize_two_hub_discrete(pts)
    a, b = np.asarray(s.hub_a), np.asarray(s.hub_b)
    mirrored = two_hub_cost_discrete(pts, -a, -b)
    assert mirrored == pytest.approx(s.expected_cost, rel=1e-9)


def test_discrete_optimizer_rejects():
    with pytest.raises(ValueError):
        optimize_two_hub_discrete([[1.0, 2.0]])
    with pytest.raises(ValueError):
        optimize_two_hub_discrete([[0.0], [1.0]], [0, 0])
