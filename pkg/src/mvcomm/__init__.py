"""Multi-view community detection for social-page interaction logs."""

from .detect import Partition, cluster_stats, louvain, lpa, modularity, sweep_detect
from .fusion import WeightVector, alpha_grid, fuse
from .graph import Graph, degree_distribution, induced_subgraph, isolates
from .views import ViewSet, make_viewset

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "isolates",
    "degree_distribution",
    "induced_subgraph",
    "ViewSet",
    "make_viewset",
    "WeightVector",
    "fuse",
    "alpha_grid",
    "Partition",
    "modularity",
    "cluster_stats",
    "louvain",
    "lpa",
    "sweep_detect",
]
