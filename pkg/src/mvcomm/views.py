"""Per-view interaction graphs built from page datasets.

Every builder emits binary graphs: a pair is connected with weight 1 when
the view's predicate holds at least once, however many times it holds.
The node universe is the restriction set when one is given, otherwise all
actors of the dataset(s), so users without qualifying interactions are
isolates rather than missing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .graph import Graph, GraphError
from .ingest import PageDataset

__all__ = [
    "ViewSet",
    "build_post_view",
    "build_comment_view",
    "build_colike_view",
    "build_mutual_comment_like_view",
    "make_viewset",
]

log = logging.getLogger(__name__)

Pair = Tuple[str, str]


@dataclass(frozen=True)
class ViewSet:
    views: Tuple[Graph, ...]
    labels: Tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.views)

    @property
    def universe(self) -> Tuple[str, ...]:
        return self.views[0].users

    def __getitem__(self, label: str) -> Graph:
        return self.views[self.labels.index(label)]


def _binary_graph(universe: Iterable[str], pairs: Set[Pair]) -> Graph:
    g = Graph(sorted(universe))
    for a, b in sorted(pairs):
        g.add_edge(a, b, 1.0)
    return g


def _colike_pairs(
    likers_by_item: Dict[str, Set[str]],
    allowed: Optional[Set[str]],
    max_likers: Optional[int],
    what: str,
    out: Set[Pair],
) -> None:
    skipped = []
    for item in sorted(likers_by_item):
        likers = likers_by_item[item]
        if allowed is not None:
            likers = likers & allowed
        if len(likers) < 2:
            continue
        if max_likers is not None and len(likers) > max_likers:
            skipped.append(item)
            continue
        for a, b in combinations(sorted(likers), 2):
            out.add((a, b))
    if skipped:
        log.warning("skipped %d %s(s) with more than %d likers: %s",
                    len(skipped), what, max_likers, ", ".join(skipped))


def _author_pairs(d: PageDataset, allowed: Optional[Set[str]], out: Set[Pair]) -> None:
    for comment, likers in d.comment_likers.items():
        author = d.comment_author.get(comment)
        if author is None or (allowed is not None and author not in allowed):
            continue
        for liker in likers:
            if liker == author or (allowed is not None and liker not in allowed):
                continue
            out.add((liker, author) if liker < author else (author, liker))


def build_post_view(
    d: PageDataset, users: Optional[Set[str]] = None, *, max_likers: Optional[int] = None
) -> Graph:
    """Connect two users when they both liked the same post."""
    allowed = set(users) if users is not None else None
    pairs: Set[Pair] = set()
    _colike_pairs(d.post_likers, allowed, max_likers, "post", pairs)
    return _binary_graph(allowed if allowed is not None else d.users(), pairs)


def build_comment_view(
    d: PageDataset, users: Optional[Set[str]] = None, *, max_likers: Optional[int] = None
) -> Graph:
    """Connect ``i`` and ``j`` when one liked the other's comment or both liked one comment."""
    allowed = set(users) if users is not None else None
    pairs: Set[Pair] = set()
    _colike_pairs(d.comment_likers, allowed, max_likers, "comment", pairs)
    _author_pairs(d, allowed, pairs)
    return _binary_graph(allowed if allowed is not None else d.users(), pairs)


def _check_users(users: Set[str]) -> Set[str]:
    users = set(users)
    if not users:
        raise GraphError("multi-page views need a nonempty user set")
    return users


def build_colike_view(
    ds: Sequence[PageDataset], users: Set[str], *, max_likers: Optional[int] = None
) -> Graph:
    """Co-liking of any post or any comment on any of the pages.

    Liking somebody's comment alone does not connect the pair here; that
    relation belongs to :func:`build_mutual_comment_like_view`.
    """
    allowed = _check_users(users)
    pairs: Set[Pair] = set()
    for d in ds:
        _colike_pairs(d.post_likers, allowed, max_likers, f"post on {d.page_id}", pairs)
        _colike_pairs(d.comment_likers, allowed, max_likers, f"comment on {d.page_id}", pairs)
    return _binary_graph(allowed, pairs)


def build_mutual_comment_like_view(ds: Sequence[PageDataset], users: Set[str]) -> Graph:
    """Connect ``i`` and ``j`` when either liked a comment the other wrote."""
    allowed = _check_users(users)
    pairs: Set[Pair] = set()
    for d in ds:
        _author_pairs(d, allowed, pairs)
    return _binary_graph(allowed, pairs)


def make_viewset(graphs: Sequence[Graph], labels: Sequence[str]) -> ViewSet:
    """Re-index ``graphs`` onto the sorted union of their users."""
    graphs = list(graphs)
    labels = [str(x) for x in labels]
    if not graphs:
        raise GraphError("a view set needs at least one graph")
    if len(labels) != len(graphs):
        raise GraphError(f"{len(graphs)} graphs but {len(labels)} labels")
    if len(set(labels)) != len(labels):
        raise GraphError(f"duplicate view labels: {labels}")
    universe: List[str] = sorted(set().union(*(g.users for g in graphs)))
    pos = {u: i for i, u in enumerate(universe)}
    views = []
    for g in graphs:
        remap = [pos[u] for u in g.users]
        rows: List[Dict[int, float]] = [{} for _ in universe]
        for i in range(g.n):
            rows[remap[i]] = {remap[j]: w for j, w in g.neighbors(i).items()}
        views.append(Graph._from_rows(list(universe), rows))
    return ViewSet(tuple(views), tuple(labels))
