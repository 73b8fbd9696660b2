"""Convex combination of view graphs and simplex grids of view weights."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Sequence, Tuple

from .graph import Graph, GraphError
from .views import ViewSet

__all__ = ["WeightVector", "FusionError", "fuse", "alpha_grid", "two_view_weights", "DROP_BELOW"]

SUM_TOL = 1e-9
DROP_BELOW = 1e-12


class FusionError(GraphError):
    pass


@dataclass(frozen=True)
class WeightVector:
    alphas: Tuple[float, ...]

    def __post_init__(self) -> None:
        alphas = tuple(float(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if not alphas:
            raise FusionError("weight vector is empty")
        for a in alphas:
            if not (0.0 <= a <= 1.0):
                raise FusionError(f"weight {a!r} outside [0, 1]")
        if abs(sum(alphas) - 1.0) > SUM_TOL:
            raise FusionError(f"weights sum to {sum(alphas)!r}, expected 1")

    def __len__(self) -> int:
        return len(self.alphas)

    def __iter__(self):
        return iter(self.alphas)

    def format(self) -> str:
        return ",".join(f"{a:.6f}" for a in self.alphas)


def two_view_weights(alpha: float) -> WeightVector:
    """``(alpha, 1 - alpha)`` for the usual two-view case."""
    return WeightVector((alpha, 1.0 - alpha))


def fuse(vs: ViewSet, w: WeightVector) -> Graph:
    """Weighted sum of the view adjacency matrices.

    Views with zero weight are skipped entirely so that a one-hot weight
    vector reproduces its view bit for bit.
    """
    if len(w) != vs.k:
        raise FusionError(f"{len(w)} weights for {vs.k} views")
    universe = list(vs.universe)
    rows: List[Dict[int, float]] = [{} for _ in universe]
    for alpha, g in zip(w.alphas, vs.views):
        if alpha == 0.0:
            continue
        for i in range(g.n):
            row = rows[i]
            for j, x in g.neighbors(i).items():
                row[j] = row.get(j, 0.0) + alpha * x
    for row in rows:
        weak = [j for j, x in row.items() if x < DROP_BELOW]
        for j in weak:
            del row[j]
    return Graph._from_rows(universe, rows)


def alpha_grid(k: int, step: float, *, include_endpoints: bool = True) -> List[WeightVector]:
    """All points of the ``k``-simplex whose coordinates are multiples of ``step``.

    Ordered lexicographically. ``1 / step`` must be an integer. With
    ``include_endpoints=False`` vectors with any coordinate equal to 0 or
    1 are dropped, leaving strictly interior points only.
    """
    if not isinstance(k, int) or k < 2:
        raise FusionError(f"alpha grid needs k >= 2 views, got {k!r}")
    if not (0.0 < step <= 1.0):
        raise FusionError(f"grid step must lie in (0, 1], got {step!r}")
    divisions = round(1.0 / step)
    if divisions < 1 or not math.isclose(divisions * step, 1.0, abs_tol=1e-9):
        raise FusionError(f"grid step {step!r} does not divide 1")
    grid = []
    for head in product(range(divisions + 1), repeat=k - 1):
        rest = divisions - sum(head)
        if rest < 0:
            continue
        counts = head + (rest,)
        if not include_endpoints and any(c == 0 or c == divisions for c in counts):
            continue
        grid.append(WeightVector(tuple(c / divisions for c in counts)))
    if not grid:
        raise FusionError(f"no interior grid points for k={k}, step={step}")
    return grid
