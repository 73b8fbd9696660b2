"""Exhaustive modularity maximisation for tiny graphs (test oracle)."""

from __future__ import annotations

from typing import Iterator, List, Tuple

import numpy as np

from ..graph import Graph, GraphError
from .partition import Partition

__all__ = ["brute_force_best_partition", "set_partitions", "MAX_BRUTE_FORCE_NODES"]

MAX_BRUTE_FORCE_NODES = 10


def set_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    """All restricted-growth strings of length ``n`` (one per set partition).

    The first string yielded puts every node in one block.
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    top = [0] * n  # top[i] = max(a[:i]), top[0] unused
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] == top[i] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        bound = max(top[i], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            top[j] = bound


def brute_force_best_partition(g: Graph) -> Tuple[Partition, float]:
    """Enumerate every set partition of ``g`` and return a modularity maximiser.

    Uses a dense evaluation of the modularity matrix, independent of
    :func:`mvcomm.detect.modularity`. The first maximiser in enumeration
    order is returned. Refuses graphs with more than 10 nodes.
    """
    n = g.n
    if n > MAX_BRUTE_FORCE_NODES:
        raise GraphError(f"brute force refused for n={n} > {MAX_BRUTE_FORCE_NODES}")
    W = np.zeros((n, n))
    for i, j, w in g.edges():
        W[i, j] = W[j, i] = w
    d = W.sum(axis=1)
    two_m = W.sum()
    if two_m == 0:
        return Partition.whole(n), 0.0
    B = W - np.outer(d, d) / two_m
    best_q = -np.inf
    best: List[int] = []
    for rgs in set_partitions(n):
        labels = np.asarray(rgs)
        same = labels[:, None] == labels[None, :]
        q = float(B[same].sum() / two_m)
        if q > best_q + 1e-13:
            best_q, best = q, list(rgs)
    return Partition(tuple(best)), best_q
