from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, TextIO

from ..fusion import WeightVector, fuse
from ..graph import Graph
from ..views import ViewSet
from .multilevel import louvain
from .propagation import lpa
from .scoring import cluster_stats
from .partition import Partition

__all__ = ["DETECTORS", "SweepEntry", "SweepResult", "SweepError", "detect", "sweep_detect", "write_sweep_report"]

DETECTORS: Dict[str, Callable[[Graph, int], Partition]] = {
    "multilevel": louvain,
    "lpa": lpa,
}


class SweepError(RuntimeError):
    pass


def detect(g: Graph, detector: str = "multilevel", seed: int = 0) -> Partition:
    try:
        fn = DETECTORS[detector]
    except KeyError:
        raise ValueError(f"unknown detector {detector!r}; choose from {sorted(DETECTORS)}") from None
    return fn(g, seed)


@dataclass(frozen=True)
class SweepEntry:
    weights: WeightVector
    graph: Graph
    partition: Partition
    modularity: float
    clusters: int
    isolates: int


@dataclass(frozen=True)
class SweepResult:
    entries: List[SweepEntry]
    selected: int

    @property
    def best(self) -> SweepEntry:
        return self.entries[self.selected]


def sweep_detect(
    vs: ViewSet, grid: Sequence[WeightVector], detector: str = "multilevel", seed: int = 0
) -> SweepResult:
    """Fuse, detect and score at every grid point; keep the best modularity.

    Modularity is measured on each point's own fused graph. Ties go to the
    earliest grid point.
    """
    if not grid:
        raise SweepError("empty weight grid")
    if detector not in DETECTORS:
        raise ValueError(f"unknown detector {detector!r}; choose from {sorted(DETECTORS)}")
    entries = []
    for idx, w in enumerate(grid):
        try:
            g = fuse(vs, w)
            p = detect(g, detector, seed)
            st = cluster_stats(g, p)
        except Exception as exc:
            raise SweepError(f"grid point {idx} ({w.format()}): {exc}") from exc
        entries.append(SweepEntry(w, g, p, st.modularity, st.clusters, st.isolates))
    selected = 0
    for idx, e in enumerate(entries):
        if e.modularity > entries[selected].modularity:
            selected = idx
    return SweepResult(entries, selected)


def write_sweep_report(result: SweepResult, fh: TextIO) -> None:
    for e in result.entries:
        fh.write(f"{e.weights.format()}\t{e.modularity:.12f}\t{e.clusters}\t{e.isolates}\n")
    fh.write(f"selected={result.selected}\n")
