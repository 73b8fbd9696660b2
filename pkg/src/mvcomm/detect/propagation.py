from __future__ import annotations

import logging
import random
from typing import Dict, List

from ..graph import Graph
from .partition import Partition

__all__ = ["lpa", "MAX_ITER"]

log = logging.getLogger(__name__)

MAX_ITER = 100
_TIE_REL = 1e-12


def _best_labels(row: Dict[int, float], labels: List[int]) -> List[int]:
    score: Dict[int, float] = {}
    for j, w in row.items():
        lj = labels[j]
        score[lj] = score.get(lj, 0.0) + w
    top = max(score.values())
    cut = top - _TIE_REL * top
    return sorted(lab for lab, s in score.items() if s >= cut)


def lpa(g: Graph, seed: int = 0, max_iter: int = MAX_ITER) -> Partition:
    """Asynchronous weighted label propagation.

    Every node starts with its own label; in each sweep nodes are visited
    in a freshly shuffled order and adopt the label with the largest total
    incident weight, ties drawn uniformly at random. Stops once every
    node already holds one of its best labels, or after ``max_iter``
    sweeps with a warning.
    """
    rng = random.Random(seed)
    labels = list(range(g.n))
    active = [i for i in range(g.n) if g.neighbors(i)]
    for _ in range(max_iter):
        order = list(active)
        rng.shuffle(order)
        for i in order:
            best = _best_labels(g.neighbors(i), labels)
            labels[i] = best[0] if len(best) == 1 else rng.choice(best)
        if all(labels[i] in _best_labels(g.neighbors(i), labels) for i in active):
            break
    else:
        log.warning("label propagation did not converge after %d sweeps", max_iter)
    return Partition(tuple(labels))
