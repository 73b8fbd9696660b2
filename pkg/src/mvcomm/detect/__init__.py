"""Modularity scoring and community detectors."""

from .multilevel import LouvainInvariantError, louvain, louvain_levels
from .propagation import lpa
from .scoring import ClusterStats, cluster_stats, modularity
from .oracle import brute_force_best_partition, set_partitions
from .partition import Partition, read_partition, write_partition
from .sweep import DETECTORS, SweepEntry, SweepError, SweepResult, detect, sweep_detect, write_sweep_report

__all__ = [
    "Partition",
    "read_partition",
    "write_partition",
    "modularity",
    "ClusterStats",
    "cluster_stats",
    "louvain",
    "louvain_levels",
    "LouvainInvariantError",
    "lpa",
    "brute_force_best_partition",
    "set_partitions",
    "DETECTORS",
    "detect",
    "SweepEntry",
    "SweepResult",
    "SweepError",
    "sweep_detect",
    "write_sweep_report",
]
