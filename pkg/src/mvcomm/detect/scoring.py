from __future__ import annotations

from dataclasses import dataclass

from ..graph import Graph, GraphError
from .partition import Partition

__all__ = ["modularity", "ClusterStats", "cluster_stats"]


def modularity(g: Graph, p: Partition) -> float:
    """Newman modularity of ``p`` on the weighted graph ``g``.

    Degrees are weighted strengths and ``m`` is the total edge weight.
    An edgeless graph has modularity 0 by convention.
    """
    if p.n != g.n:
        raise GraphError(f"partition covers {p.n} nodes, graph has {g.n}")
    two_m = 2.0 * g.total_weight
    if two_m == 0.0:
        return 0.0
    labels = p.assignment
    c = p.num_communities
    internal = [0.0] * c
    total = [0.0] * c
    for i in range(g.n):
        ci = labels[i]
        for j, w in g.neighbors(i).items():
            total[ci] += w
            if labels[j] == ci:
                internal[ci] += w
    q = 0.0
    for a, t in zip(internal, total):
        q += a / two_m - (t / two_m) ** 2
    return q


@dataclass(frozen=True)
class ClusterStats:
    clusters: int
    isolates: int
    modularity: float


def cluster_stats(g: Graph, p: Partition) -> ClusterStats:
    q = modularity(g, p)
    n_iso = sum(1 for i in range(g.n) if not g.neighbors(i))
    return ClusterStats(p.num_communities, n_iso, q)
