"""Sparse weighted undirected graph over user identifiers.

Nodes carry a dense integer index in ``[0, n)`` and a string user id.
Each unordered pair is stored once per endpoint in an adjacency dict, so
``weight(i, j) == weight(j, i)`` holds by construction.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, Iterable, Iterator, List, Optional, Set, TextIO, Tuple

__all__ = [
    "Graph",
    "GraphError",
    "SelfLoopError",
    "isolates",
    "degree_distribution",
    "induced_subgraph",
    "write_edge_list",
    "read_edge_list",
]


class GraphError(ValueError):
    pass


class SelfLoopError(GraphError):
    pass


class Graph:
    """Undirected graph with positive real edge weights and no self-loops.

    Construction is single-writer; once built, a graph is treated as
    immutable by every consumer in this package.
    """

    __slots__ = ("_users", "_index", "_adj", "_total")

    def __init__(self, users: Iterable[str] = ()) -> None:
        self._users: List[str] = []
        self._index: Dict[str, int] = {}
        self._adj: List[Dict[int, float]] = []
        self._total = 0.0
        for u in users:
            self.add_node(u)

    # -- construction -------------------------------------------------
    def add_node(self, user: str) -> int:
        idx = self._index.get(user)
        if idx is None:
            idx = len(self._users)
            self._index[user] = idx
            self._users.append(user)
            self._adj.append({})
        return idx

    def add_edge(self, u: str, v: str, w: float = 1.0) -> "Graph":
        """Accumulate weight ``w`` on the pair ``{u, v}``.

        Unseen users are added to the node map. Returns the graph so calls
        can be chained.
        """
        if u == v:
            raise SelfLoopError(f"self-loop on {u!r} is not allowed")
        if not w > 0:
            raise GraphError(f"edge weight must be positive, got {w!r}")
        i = self.add_node(u)
        j = self.add_node(v)
        self._add_index_edge(i, j, float(w))
        return self

    def _add_index_edge(self, i: int, j: int, w: float) -> None:
        row = self._adj[i]
        new = row.get(j, 0.0) + w
        row[j] = new
        self._adj[j][i] = new
        self._total += w

    @classmethod
    def _from_rows(cls, users: List[str], rows: List[Dict[int, float]]) -> "Graph":
        # rows must already be symmetric, self-loop free and strictly positive
        g = cls(users)
        g._adj = rows
        g._total = sum(w for i, row in enumerate(rows) for j, w in row.items() if i < j)
        return g

    # -- queries ------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self._users)

    @property
    def users(self) -> Tuple[str, ...]:
        return tuple(self._users)

    @property
    def total_weight(self) -> float:
        """Sum of weights over unordered pairs (``m``)."""
        return self._total

    @property
    def num_edges(self) -> int:
        return sum(len(row) for row in self._adj) // 2

    def __len__(self) -> int:
        return self.n

    def __contains__(self, user: object) -> bool:
        return user in self._index

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.num_edges}, m={self._total:g})"

    def index(self, user: str) -> int:
        try:
            return self._index[user]
        except KeyError:
            raise GraphError(f"unknown user {user!r}") from None

    def user(self, i: int) -> str:
        return self._users[i]

    def neighbors(self, i: int) -> Dict[int, float]:
        """Neighbour index -> weight for node ``i``. Do not mutate."""
        return self._adj[i]

    def weight(self, u: str, v: str) -> float:
        return self._adj[self.index(u)].get(self.index(v), 0.0)

    def has_edge(self, u: str, v: str) -> bool:
        i = self._index.get(u)
        j = self._index.get(v)
        return i is not None and j is not None and j in self._adj[i]

    def strength(self, i: int) -> float:
        return sum(self._adj[i].values())

    def strengths(self) -> List[float]:
        return [sum(row.values()) for row in self._adj]

    def edges(self) -> Iterator[Tuple[int, int, float]]:
        """Yield ``(i, j, w)`` with ``i < j``, ordered by ``i`` then ``j``."""
        for i, row in enumerate(self._adj):
            for j in sorted(row):
                if i < j:
                    yield i, j, row[j]

    def edge_set(self) -> Set[Tuple[str, str]]:
        """Unordered pairs as lexicographically ordered user-id tuples."""
        out = set()
        for i, j, _ in self.edges():
            a, b = self._users[i], self._users[j]
            out.add((a, b) if a < b else (b, a))
        return out

    def weighted_edges(self) -> Dict[Tuple[str, str], float]:
        out = {}
        for i, j, w in self.edges():
            a, b = self._users[i], self._users[j]
            out[(a, b) if a < b else (b, a)] = w
        return out


def isolates(g: Graph) -> Set[str]:
    """Users whose strength is zero."""
    return {g.user(i) for i in range(g.n) if not g.neighbors(i)}


def degree_distribution(g: Graph) -> Dict[float, int]:
    """Histogram of node strengths.

    Integral strengths are keyed by ``int``; fractional strengths (fused
    graphs) are keyed by their value rounded to 6 decimals.
    """
    hist: Counter = Counter()
    for s in g.strengths():
        key = int(s) if float(s).is_integer() else round(s, 6)
        hist[key] += 1
    return dict(sorted(hist.items()))


def induced_subgraph(g: Graph, users: Iterable[str]) -> Graph:
    keep = set(users)
    for u in sorted(keep):
        if u not in g:
            raise GraphError(f"unknown user {u!r}")
    old = sorted(g.index(u) for u in keep)
    remap = {o: k for k, o in enumerate(old)}
    rows: List[Dict[int, float]] = []
    for o in old:
        rows.append({remap[j]: w for j, w in g.neighbors(o).items() if j in remap})
    return Graph._from_rows([g.user(o) for o in old], rows)


def _sorted_pairs(g: Graph) -> List[Tuple[str, str, float]]:
    return sorted((a, b, w) for (a, b), w in g.weighted_edges().items())


def write_edge_list(g: Graph, fh: TextIO) -> None:
    """``a<TAB>b<TAB>weight`` per unordered pair, with ``a < b``, sorted."""
    for a, b, w in _sorted_pairs(g):
        fh.write(f"{a}\t{b}\t{w:.6f}\n")


def read_edge_list(fh: TextIO, users: Optional[Iterable[str]] = None) -> Graph:
    g = Graph(sorted(users) if users is not None else ())
    for lineno, line in enumerate(fh, 1):
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 3 tab-separated columns")
        g.add_edge(parts[0], parts[1], float(parts[2]))
    return g
