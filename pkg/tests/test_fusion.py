import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mvcomm.fusion import FusionError, WeightVector, alpha_grid, fuse, two_view_weights
from mvcomm.graph import isolates
from mvcomm.views import make_viewset

from conftest import make_graph, random_graph


def test_fuse_half_half():
    vs = make_viewset([make_graph([("a", "b")]), make_graph([("b", "c")])], ["x", "y"])
    fused = fuse(vs, two_view_weights(0.5))
    assert fused.weighted_edges() == {("a", "b"): 0.5, ("b", "c"): 0.5}
    assert fused.users == ("a", "b", "c")


def test_fuse_one_hot_reduces_to_view():
    vs = make_viewset([make_graph([("a", "b"), ("c", "d")]), make_graph([("b", "c")])], ["x", "y"])
    fused = fuse(vs, WeightVector((1, 0)))
    assert fused.weighted_edges() == vs.views[0].weighted_edges()
    assert fused.total_weight == vs.views[0].total_weight


@pytest.mark.parametrize("alpha", [0.0, 0.2, 0.3, 0.5, 0.7, 1.0])
def test_fuse_identical_views(alpha):
    g = make_graph([("a", "b"), ("b", "c"), ("c", "d")])
    vs = make_viewset([g, g], ["x", "y"])
    fused = fuse(vs, two_view_weights(alpha))
    for pair, w in fused.weighted_edges().items():
        assert w == pytest.approx(g.weighted_edges()[pair], abs=1e-15)
    assert fused.edge_set() == g.edge_set()


def test_fuse_errors():
    vs = make_viewset([make_graph([("a", "b")]), make_graph([("b", "c")])], ["x", "y"])
    with pytest.raises(FusionError):
        fuse(vs, WeightVector((0.2, 0.3, 0.5)))
    with pytest.raises(FusionError):
        WeightVector((0.5, 0.6))
    with pytest.raises(FusionError):
        WeightVector((1.5, -0.5))


def test_alpha_grid_step_point_two_candidates():
    grid = alpha_grid(2, 0.2)
    assert [w.alphas[0] for w in grid] == [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
    assert all(abs(sum(w) - 1) < 1e-12 for w in grid)
    assert [w.alphas for w in alpha_grid(2, 1.0)] == [(0.0, 1.0), (1.0, 0.0)]


def _lattice_oracle(k, divisions):
    # every tuple of multiples of 1/divisions, then keep those summing to 1
    pts = [c for c in product(range(divisions + 1), repeat=k) if sum(c) == divisions]
    return sorted(tuple(x / divisions for x in c) for c in pts)


def test_alpha_grid_three_views():
    grid = [w.alphas for w in alpha_grid(3, 0.5)]
    assert grid == [(0, 0, 1), (0, 0.5, 0.5), (0, 1, 0), (0.5, 0, 0.5), (0.5, 0.5, 0), (1, 0, 0)]
    assert grid == _lattice_oracle(3, 2)
    assert [w.alphas for w in alpha_grid(4, 0.25)] == _lattice_oracle(4, 4)


def test_alpha_grid_interior_only():
    grid = alpha_grid(2, 0.2, include_endpoints=False)
    assert [w.alphas[0] for w in grid] == [0.2, 0.4, 0.6, 0.8]
    with pytest.raises(FusionError):
        alpha_grid(2, 1.0, include_endpoints=False)


@pytest.mark.parametrize("k,step", [(1, 0.5), (2, 0.0), (2, 1.5), (2, 0.3), (2, -0.2)])
def test_alpha_grid_invalid(k, step):
    with pytest.raises(FusionError):
        alpha_grid(k, step)


def dense(g):
    W = np.zeros((g.n, g.n))
    for i, j, w in g.edges():
        W[i, j] = W[j, i] = w
    return W


@given(st.integers(0, 10_000), st.integers(2, 4), st.integers(0, 8))
def test_fuse_matches_dense_combination(seed, k, n):
    rng = random.Random(seed)
    graphs = [random_graph(rng, n, rng.random(), weighted=True) for _ in range(k)]
    raw = [rng.random() for _ in range(k)]
    alphas = [x / sum(raw) for x in raw]
    vs = make_viewset(graphs, [f"v{i}" for i in range(k)])
    fused = fuse(vs, WeightVector(tuple(alphas)))
    expected = sum(a * dense(g) for a, g in zip(alphas, vs.views))
    assert np.allclose(dense(fused), expected, rtol=0, atol=1e-12)
    support = set().union(*(g.edge_set() for a, g in zip(alphas, vs.views) if a > 0))
    assert fused.edge_set() == support
    expected_iso = set(vs.universe)
    for a, g in zip(alphas, vs.views):
        if a > 0:
            expected_iso &= isolates(g)
    assert isolates(fused) == expected_iso
