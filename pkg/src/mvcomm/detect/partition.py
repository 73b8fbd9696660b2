from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, TextIO, Tuple

from ..graph import Graph, GraphError

__all__ = ["Partition", "write_partition", "read_partition"]


@dataclass(frozen=True)
class Partition:
    """Community label per node index, relabelled densely by first occurrence.

    Two partitions grouping the nodes identically compare equal regardless
    of the labels they were built from.
    """

    assignment: Tuple[int, ...]

    def __post_init__(self) -> None:
        seen: Dict[object, int] = {}
        dense = []
        for label in self.assignment:
            if label not in seen:
                seen[label] = len(seen)
            dense.append(seen[label])
        object.__setattr__(self, "assignment", tuple(dense))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def num_communities(self) -> int:
        return max(self.assignment) + 1 if self.assignment else 0

    def __len__(self) -> int:
        return len(self.assignment)

    def __getitem__(self, i: int) -> int:
        return self.assignment[i]

    def communities(self) -> List[List[int]]:
        groups: List[List[int]] = [[] for _ in range(self.num_communities)]
        for node, c in enumerate(self.assignment):
            groups[c].append(node)
        return groups


def write_partition(g: Graph, p: Partition, fh: TextIO) -> None:
    """``user_id<TAB>community_label`` per node, sorted by user id."""
    if p.n != g.n:
        raise GraphError(f"partition covers {p.n} nodes, graph has {g.n}")
    for user, label in sorted(zip(g.users, p.assignment)):
        fh.write(f"{user}\t{label}\n")


def read_partition(fh: TextIO, g: Graph) -> Partition:
    """Read a partition file and align it to ``g``'s node indexes.

    Every node of ``g`` must be assigned exactly once; labels may be any
    strings.
    """
    labels: Dict[str, str] = {}
    for lineno, line in enumerate(fh, 1):
        line = line.rstrip("\r\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise GraphError(f"partition line {lineno}: expected user<TAB>label")
        user, label = parts
        if user in labels:
            raise GraphError(f"partition line {lineno}: user {user!r} assigned twice")
        labels[user] = label
    missing = [u for u in g.users if u not in labels]
    if missing:
        raise GraphError(f"partition does not cover {len(missing)} node(s), e.g. {missing[0]!r}")
    extra = sorted(set(labels) - set(g.users))
    if extra:
        raise GraphError(f"partition names {len(extra)} unknown user(s), e.g. {extra[0]!r}")
    return Partition(tuple(labels[u] for u in g.users))
