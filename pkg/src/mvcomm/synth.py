"""Planted-partition multi-view benchmarks and partition similarity."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from .detect import Partition, cluster_stats, detect, sweep_detect
from .fusion import WeightVector, fuse
from .graph import Graph
from .views import ViewSet, make_viewset

__all__ = [
    "PlantedSpec",
    "SynthError",
    "generate",
    "partition_similarity",
    "EvalRow",
    "evaluate_planted",
    "parse_spec_text",
]

log = logging.getLogger(__name__)

PerView = Union[float, Sequence[float]]


class SynthError(ValueError):
    pass


def _per_view(value: PerView, views: int, name: str) -> Tuple[float, ...]:
    if isinstance(value, (int, float)):
        return (float(value),) * views
    out = tuple(float(v) for v in value)
    if len(out) == 1:
        return out * views
    if len(out) != views:
        raise SynthError(f"{name} has {len(out)} values for {views} views")
    return out


@dataclass(frozen=True)
class PlantedSpec:
    """Parameters of a multi-view planted-partition graph.

    ``p_in``, ``p_out`` and ``inactive_fraction`` accept one value for all
    views or one per view. With ``disjoint_inactive`` the inactive node
    sets of different views never overlap.
    """

    n: int
    k_communities: int = 2
    p_in: PerView = 0.1
    p_out: PerView = 0.01
    inactive_fraction: PerView = 0.0
    views: int = 2
    seed: int = 0
    disjoint_inactive: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 0:
            raise SynthError(f"n must be a non-negative integer, got {self.n!r}")
        if not isinstance(self.k_communities, int) or self.k_communities < 1:
            raise SynthError(f"k_communities must be >= 1, got {self.k_communities!r}")
        if not isinstance(self.views, int) or self.views < 2:
            raise SynthError(f"views must be >= 2, got {self.views!r}")
        for name in ("p_in", "p_out", "inactive_fraction"):
            object.__setattr__(self, name, _per_view(getattr(self, name), self.views, name))
        for name in ("p_in", "p_out"):
            for p in getattr(self, name):
                if not (0.0 <= p <= 1.0):
                    raise SynthError(f"{name} value {p!r} outside [0, 1]")
        for f in self.inactive_fraction:
            if not (0.0 <= f < 1.0):
                raise SynthError(f"inactive fraction {f!r} outside [0, 1)")
        if self.disjoint_inactive and sum(self.inactive_counts()) > self.n:
            raise SynthError("disjoint inactive sets do not fit in n nodes")
        for v, (pi, po) in enumerate(zip(self.p_in, self.p_out)):
            if pi <= po:
                log.warning("view %d: p_in=%g <= p_out=%g, no detectable structure", v + 1, pi, po)

    def inactive_counts(self) -> List[int]:
        return [math.ceil(f * self.n - 1e-9) for f in self.inactive_fraction]

    def user_ids(self) -> List[str]:
        width = len(str(max(self.n - 1, 0)))
        return [f"v{i:0{width}d}" for i in range(self.n)]

    def truth(self) -> Partition:
        return Partition(tuple(i * self.k_communities // self.n for i in range(self.n)))


def _triangle_pairs(t: np.ndarray, s: int) -> Tuple[np.ndarray, np.ndarray]:
    # row-major index over {(i, j): 0 <= i < j < s} -> (i, j)
    t = t.astype(np.int64)
    i = s - 2 - np.floor(np.sqrt(-8.0 * t + 4.0 * s * (s - 1) - 7.0) / 2.0 - 0.5).astype(np.int64)
    j = t + i + 1 - s * (s - 1) // 2 + (s - i) * (s - i - 1) // 2
    return i, j


def _sample_block(rng: np.random.Generator, start_a: int, size_a: int, start_b: int, size_b: int,
                  p: float, same: bool) -> Tuple[np.ndarray, np.ndarray]:
    total = size_a * (size_a - 1) // 2 if same else size_a * size_b
    if total == 0 or p == 0.0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    count = int(rng.binomial(total, p))
    picks = rng.choice(total, size=count, replace=False)
    if same:
        i, j = _triangle_pairs(picks, size_a)
        return start_a + i, start_a + j
    return start_a + picks // size_b, start_b + picks % size_b


def generate(spec: PlantedSpec) -> Tuple[ViewSet, Partition]:
    """Sample the views and return them with the planted ground truth.

    Within each view every pair is an independent Bernoulli edge; each
    view then silences its inactive nodes by dropping their edges while
    keeping them in the node universe.
    """
    n = spec.n
    rng = np.random.default_rng(spec.seed)
    truth = spec.truth()
    users = spec.user_ids()
    labels = [f"view{v + 1}" for v in range(spec.views)]
    if n == 0:
        return make_viewset([Graph() for _ in labels], labels), truth

    blocks = truth.communities()
    starts = [b[0] for b in blocks]
    sizes = [len(b) for b in blocks]

    view_edges = []
    for v in range(spec.views):
        src, dst = [], []
        for a in range(len(blocks)):
            for b in range(a, len(blocks)):
                p = spec.p_in[v] if a == b else spec.p_out[v]
                i, j = _sample_block(rng, starts[a], sizes[a], starts[b], sizes[b], p, a == b)
                src.append(i)
                dst.append(j)
        view_edges.append((np.concatenate(src), np.concatenate(dst)))

    counts = spec.inactive_counts()
    if spec.disjoint_inactive:
        perm = rng.permutation(n)
        offsets = np.cumsum([0] + counts)
        inactive = [perm[offsets[v]:offsets[v + 1]] for v in range(spec.views)]
    else:
        inactive = [rng.choice(n, size=c, replace=False) for c in counts]

    graphs = []
    for (i, j), off in zip(view_edges, inactive):
        mask = np.ones(n, dtype=bool)
        mask[off] = False
        keep = mask[i] & mask[j]
        i, j = i[keep], j[keep]
        order = np.lexsort((j, i))
        rows: List[Dict[int, float]] = [{} for _ in range(n)]
        for a, b in zip(i[order].tolist(), j[order].tolist()):
            rows[a][b] = 1.0
            rows[b][a] = 1.0
        graphs.append(Graph._from_rows(list(users), rows))
    return make_viewset(graphs, labels), truth


def _entropy(counts: Sequence[int], total: int) -> float:
    return -sum(c / total * math.log(c / total) for c in counts if c)


def partition_similarity(a: Partition, b: Partition) -> float:
    """Normalised mutual information, arithmetic-mean normalisation."""
    if a.n != b.n:
        raise ValueError(f"partitions differ in size: {a.n} vs {b.n}")
    total = a.n
    if total == 0:
        return 1.0
    ca = Counter(a.assignment)
    cb = Counter(b.assignment)
    joint = Counter(zip(a.assignment, b.assignment))
    ha = _entropy(list(ca.values()), total)
    hb = _entropy(list(cb.values()), total)
    if ha + hb == 0.0:
        return 1.0
    mi = 0.0
    for (x, y), nxy in joint.items():
        mi += nxy / total * math.log(total * nxy / (ca[x] * cb[y]))
    return min(1.0, max(0.0, mi / ((ha + hb) / 2.0)))


@dataclass(frozen=True)
class EvalRow:
    method: str
    weights: Optional[WeightVector]
    modularity: float
    clusters: int
    isolates: int
    nmi: float


def evaluate_planted(
    vs: ViewSet,
    truth: Partition,
    grid: Sequence[WeightVector],
    detector: str = "multilevel",
    seed: int = 0,
    fixed: Optional[WeightVector] = None,
) -> Tuple[List[EvalRow], int]:
    """Score single views, an optional fixed fusion and a sweep against ground truth.

    Rows come in that order: one per view (method = view label), then
    ``merged`` for ``fixed`` when given, then one ``sweep`` row per grid
    point. The second value is the row index of the sweep's selection.
    """
    rows = []
    for label, g in zip(vs.labels, vs.views):
        rows.append(_eval_row(label, None, g, detect(g, detector, seed), truth))
    if fixed is not None:
        g = fuse(vs, fixed)
        rows.append(_eval_row("merged", fixed, g, detect(g, detector, seed), truth))
    result = sweep_detect(vs, grid, detector, seed)
    offset = len(rows)
    for e in result.entries:
        rows.append(_eval_row("sweep", e.weights, e.graph, e.partition, truth))
    return rows, offset + result.selected


def _eval_row(method: str, weights: Optional[WeightVector], g: Graph, p: Partition, truth: Partition) -> EvalRow:
    st = cluster_stats(g, p)
    return EvalRow(method, weights, st.modularity, st.clusters, st.isolates, partition_similarity(p, truth))


_SPEC_KEYS = {
    "n": int,
    "communities": int,
    "p_in": str,
    "p_out": str,
    "inactive": str,
    "views": int,
    "seed": int,
    "disjoint_inactive": str,
}


def parse_spec_text(fh: TextIO) -> Dict[str, object]:
    """Read ``key = value`` lines (``#`` comments allowed) into raw settings."""
    out: Dict[str, object] = {}
    for lineno, line in enumerate(fh, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SynthError(f"spec line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _SPEC_KEYS:
            raise SynthError(f"spec line {lineno}: unknown key {key!r}")
        try:
            out[key] = _SPEC_KEYS[key](value)
        except ValueError:
            raise SynthError(f"spec line {lineno}: bad value {value!r} for {key}") from None
    return out
