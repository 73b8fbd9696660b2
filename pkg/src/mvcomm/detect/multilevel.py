"""Multi-level (Louvain) modularity optimisation.

Each level moves single nodes to the neighbouring community with the
largest positive modularity gain until no move helps, then collapses
every community into one node and repeats on the smaller graph. Visit
order is a seeded shuffle; among equally good target communities the
smallest label wins, and a node only leaves its community for a strictly
better one.
"""

from __future__ import annotations

import random
from typing import Dict, List, Tuple

from ..graph import Graph
from .partition import Partition

__all__ = ["louvain", "louvain_levels", "LouvainInvariantError"]

# a weighted graph in which node i may carry an internal (self-loop) weight;
# loops[i] is counted over ordered pairs, like the diagonal of the adjacency matrix
_Level = Tuple[List[Dict[int, float]], List[float], List[float]]

_REL_EPS = 1e-12


class LouvainInvariantError(RuntimeError):
    pass


def _level_modularity(loops: List[float], k: List[float], two_m: float) -> float:
    return sum(a / two_m - (t / two_m) ** 2 for a, t in zip(loops, k))


def _move_nodes(level: _Level, two_m: float, rng: random.Random) -> Tuple[List[int], bool]:
    nbrs, _, k = level
    n = len(k)
    comm = list(range(n))
    tot = list(k)
    order = list(range(n))
    rng.shuffle(order)
    moved_any = False
    while True:
        moves = 0
        for i in order:
            row = nbrs[i]
            if not row:
                continue
            ki = k[i]
            ci = comm[i]
            links: Dict[int, float] = {}
            for j, w in row.items():
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            tot[ci] -= ki
            ratio = ki / two_m
            stay = links.get(ci, 0.0) - tot[ci] * ratio
            best_c, best = ci, stay
            for c in sorted(links):
                if c == ci:
                    continue
                gain = links[c] - tot[c] * ratio
                if gain > best:
                    best_c, best = c, gain
            if best_c != ci and best - stay <= _REL_EPS * ki:
                best_c = ci
            tot[best_c] += ki
            if best_c != ci:
                comm[i] = best_c
                moves += 1
        if not moves:
            break
        moved_any = True
    return comm, moved_any


def _aggregate(level: _Level, comm: List[int]) -> Tuple[_Level, List[int]]:
    nbrs, loops, k = level
    dense: Dict[int, int] = {}
    labels = []
    for c in comm:
        if c not in dense:
            dense[c] = len(dense)
        labels.append(dense[c])
    size = len(dense)
    new_nbrs: List[Dict[int, float]] = [{} for _ in range(size)]
    new_loops = [0.0] * size
    new_k = [0.0] * size
    for i, ci in enumerate(labels):
        new_loops[ci] += loops[i]
        new_k[ci] += k[i]
        row = new_nbrs[ci]
        for j, w in nbrs[i].items():
            cj = labels[j]
            if cj == ci:
                new_loops[ci] += w
            else:
                row[cj] = row.get(cj, 0.0) + w
    return (new_nbrs, new_loops, new_k), labels


def louvain_levels(g: Graph, seed: int = 0) -> List[Partition]:
    """Partition of ``g``'s nodes after each aggregation level, coarsest last.

    Empty when no node ever moves (for instance on an edgeless graph).
    Raises :class:`LouvainInvariantError` if a local-move phase ever
    lowers modularity.
    """
    two_m = 2.0 * g.total_weight
    if two_m == 0.0:
        return []
    rng = random.Random(seed)
    nbrs = [dict(g.neighbors(i)) for i in range(g.n)]
    level: _Level = (nbrs, [0.0] * g.n, g.strengths())
    membership = list(range(g.n))
    q = _level_modularity(level[1], level[2], two_m)
    levels: List[Partition] = []
    while True:
        comm, moved = _move_nodes(level, two_m, rng)
        if not moved:
            break
        level, labels = _aggregate(level, comm)
        q_next = _level_modularity(level[1], level[2], two_m)
        if q_next < q - 1e-10:
            raise LouvainInvariantError(f"modularity dropped from {q!r} to {q_next!r}")
        q = q_next
        membership = [labels[c] for c in membership]
        levels.append(Partition(tuple(membership)))
    return levels


def louvain(g: Graph, seed: int = 0) -> Partition:
    """Coarsest Louvain partition of ``g``; isolates stay singletons."""
    levels = louvain_levels(g, seed)
    return levels[-1] if levels else Partition.singletons(g.n)
