import random

import numpy as np
import pytest

from mvcomm.detect import Partition, cluster_stats, modularity
from mvcomm.graph import Graph, GraphError

from conftest import make_graph, random_graph


def dense_modularity(g, labels):
    """Literal double sum over ordered node pairs."""
    n = g.n
    W = np.zeros((n, n))
    for i, j, w in g.edges():
        W[i, j] = W[j, i] = w
    d = W.sum(axis=1)
    two_m = W.sum()
    if two_m == 0:
        return 0.0
    q = 0.0
    for i in range(n):
        for j in range(n):
            if labels[i] == labels[j]:
                q += W[i, j] - d[i] * d[j] / two_m
    return q / two_m


def test_whole_is_zero(barbell, triangle):
    for g in (barbell, triangle):
        assert abs(modularity(g, Partition.whole(g.n))) < 1e-15


def test_triangle_singletons(triangle):
    assert modularity(triangle, Partition.singletons(3)) == pytest.approx(-1 / 3, abs=1e-12)


def test_barbell_two_triangles(barbell):
    assert modularity(barbell, Partition((0, 0, 0, 1, 1, 1))) == pytest.approx(5 / 14, abs=1e-12)


def test_edgeless_is_zero():
    assert modularity(Graph(["a", "b"]), Partition.singletons(2)) == 0.0


def test_size_mismatch(triangle):
    with pytest.raises(GraphError):
        modularity(triangle, Partition.singletons(4))


def test_against_dense_sum():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 9)
        g = random_graph(rng, n, rng.random(), weighted=rng.random() < 0.5)
        labels = [rng.randrange(n) for _ in range(n)]
        q = modularity(g, Partition(tuple(labels)))
        assert abs(q - dense_modularity(g, labels)) < 1e-12
        assert -1 <= q <= 1


def test_cluster_stats(barbell, triangle):
    st = cluster_stats(barbell, Partition((0, 0, 0, 1, 1, 1)))
    assert (st.clusters, st.isolates) == (2, 0)
    assert st.modularity == pytest.approx(5 / 14, abs=1e-12)
    st = cluster_stats(Graph(["a", "b", "c"]), Partition.singletons(3))
    assert (st.clusters, st.isolates, st.modularity) == (3, 3, 0.0)
    st = cluster_stats(triangle, Partition.whole(3))
    assert (st.clusters, st.isolates) == (1, 0) and abs(st.modularity) < 1e-15


def test_partition_relabels_densely():
    p = Partition(("x", "y", "x", 7))
    assert p.assignment == (0, 1, 0, 2)
    assert p == Partition((5, 3, 5, 1))
    assert p.communities() == [[0, 2], [1], [3]]
