"""Event-log parsing, page statistics and activity filters.

Log format, one event per line, tab separated::

    kind  page_id  post_id  comment_id  actor_id  author_id  timestamp

``-`` marks an inapplicable optional field and lines starting with ``#``
are skipped.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, TextIO, Tuple

__all__ = [
    "EventKind",
    "InteractionEvent",
    "PageDataset",
    "Diagnostic",
    "IngestError",
    "ActivityFilterConfig",
    "DatasetStats",
    "parse_events",
    "read_event_file",
    "merge_datasets",
    "write_events",
    "dataset_stats",
    "popular_content",
    "active_users",
    "common_users",
    "restrict_events",
]

MISSING = "-"
N_COLUMNS = 7


class IngestError(ValueError):
    pass


class EventKind(str, enum.Enum):
    POST_LIKE = "POST_LIKE"
    COMMENT = "COMMENT"
    COMMENT_LIKE = "COMMENT_LIKE"


@dataclass(frozen=True)
class InteractionEvent:
    kind: EventKind
    page_id: str
    post_id: str
    comment_id: Optional[str]
    actor_id: str
    author_id: Optional[str]
    timestamp: int

    def to_line(self) -> str:
        cols = [
            self.kind.value,
            self.page_id,
            self.post_id,
            self.comment_id or MISSING,
            self.actor_id,
            self.author_id or MISSING,
            str(self.timestamp),
        ]
        return "\t".join(cols)


@dataclass(frozen=True)
class Diagnostic:
    line: Optional[int]
    message: str
    level: str = "error"
    source: str = "<input>"

    def __str__(self) -> str:
        where = self.source if self.line is None else f"{self.source}:{self.line}"
        return f"{where}: {self.level}: {self.message}"


@dataclass
class PageDataset:
    """All ingested events of one page plus the lookup indexes views need."""

    page_id: str
    events: List[InteractionEvent] = field(default_factory=list)

    def __post_init__(self) -> None:
        for ev in self.events:
            if ev.page_id != self.page_id:
                raise IngestError(f"event for page {ev.page_id!r} in dataset {self.page_id!r}")
        self._build_indexes()

    def _build_indexes(self) -> None:
        post_likers: Dict[str, Set[str]] = defaultdict(set)
        comment_likers: Dict[str, Set[str]] = defaultdict(set)
        comment_author: Dict[str, str] = {}
        for ev in self.events:
            if ev.kind is EventKind.POST_LIKE:
                post_likers[ev.post_id].add(ev.actor_id)
            elif ev.kind is EventKind.COMMENT_LIKE:
                comment_likers[ev.comment_id].add(ev.actor_id)
            else:
                comment_author.setdefault(ev.comment_id, ev.actor_id)
        self.post_likers = dict(post_likers)
        self.comment_likers = dict(comment_likers)
        self.comment_author = comment_author

    def users(self) -> Set[str]:
        return {ev.actor_id for ev in self.events}


@dataclass(frozen=True)
class ActivityFilterConfig:
    min_post_likers: int = 2
    min_comment_likers: int = 1

    def __post_init__(self) -> None:
        for name in ("min_post_likers", "min_comment_likers"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class DatasetStats:
    users: int
    posts: int
    comments: int
    likes: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.users, self.posts, self.comments, self.likes)


def _opt(value: str) -> Optional[str]:
    return None if value == MISSING or value == "" else value


def _parse_line(line: str) -> InteractionEvent:
    parts = line.split("\t")
    if len(parts) != N_COLUMNS:
        raise IngestError(f"expected {N_COLUMNS} tab-separated columns, got {len(parts)}")
    kind_s, page, post, comment, actor, author, ts = parts
    try:
        kind = EventKind(kind_s)
    except ValueError:
        raise IngestError(f"unknown event kind {kind_s!r}") from None
    try:
        timestamp = int(ts)
    except ValueError:
        raise IngestError(f"timestamp is not an integer: {ts!r}") from None
    comment_id, author_id = _opt(comment), _opt(author)
    for name, value in (("page_id", page), ("post_id", post), ("actor_id", actor)):
        if _opt(value) is None:
            raise IngestError(f"{name} is required")
    if kind is not EventKind.POST_LIKE and comment_id is None:
        raise IngestError(f"{kind.value} requires comment_id")
    if kind is EventKind.COMMENT:
        if author_id is None:
            raise IngestError("COMMENT requires author_id")
        if author_id != actor:
            raise IngestError(f"COMMENT author_id {author_id!r} differs from actor_id {actor!r}")
    return InteractionEvent(kind, page, post, comment_id, actor, author_id, timestamp)


def parse_events(
    lines: Iterable[str], *, strict: bool = False, source: str = "<input>"
) -> Tuple[List[PageDataset], List[Diagnostic]]:
    """Parse an event log into per-page datasets.

    Malformed lines and dangling comment references are reported as
    diagnostics and do not stop parsing. With ``strict=True`` the first
    error-level diagnostic raises :class:`IngestError` instead.
    Datasets are returned in order of first appearance of their page.
    """
    by_page: Dict[str, List[InteractionEvent]] = {}
    diags: List[Diagnostic] = []
    like_lines: List[Tuple[int, InteractionEvent]] = []

    def report(lineno: Optional[int], msg: str, level: str = "error") -> None:
        d = Diagnostic(lineno, msg, level, source)
        if strict and level == "error":
            raise IngestError(str(d))
        diags.append(d)

    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        try:
            ev = _parse_line(line)
        except IngestError as exc:
            report(lineno, str(exc))
            continue
        by_page.setdefault(ev.page_id, []).append(ev)
        if ev.kind is EventKind.COMMENT_LIKE:
            like_lines.append((lineno, ev))

    if not by_page:
        report(None, "no events in input", "warning")

    known = {(ev.page_id, ev.comment_id) for evs in by_page.values() for ev in evs
             if ev.kind is EventKind.COMMENT}
    for lineno, ev in like_lines:
        if (ev.page_id, ev.comment_id) not in known:
            report(lineno, f"COMMENT_LIKE references unknown comment {ev.comment_id!r}"
                           f" on page {ev.page_id!r}")

    datasets = [PageDataset(page, evs) for page, evs in by_page.items()]
    return datasets, diags


def read_event_file(path: str, *, strict: bool = False) -> Tuple[List[PageDataset], List[Diagnostic]]:
    with open(path, encoding="utf-8") as fh:
        return parse_events(fh, strict=strict, source=str(path))


def merge_datasets(groups: Iterable[Iterable[PageDataset]]) -> List[PageDataset]:
    """Concatenate datasets of the same page coming from several inputs."""
    events: Dict[str, List[InteractionEvent]] = {}
    for group in groups:
        for d in group:
            events.setdefault(d.page_id, []).extend(d.events)
    return [PageDataset(page, evs) for page, evs in events.items()]


def write_events(events: Iterable[InteractionEvent], fh: TextIO) -> None:
    fh.write("#kind\tpage_id\tpost_id\tcomment_id\tactor_id\tauthor_id\ttimestamp\n")
    for ev in events:
        fh.write(ev.to_line() + "\n")


def dataset_stats(d: PageDataset) -> DatasetStats:
    users = set()
    posts = set()
    comments = likes = 0
    for ev in d.events:
        users.add(ev.actor_id)
        posts.add(ev.post_id)
        if ev.kind is EventKind.COMMENT:
            comments += 1
        else:
            likes += 1
    return DatasetStats(len(users), len(posts), comments, likes)


def popular_content(d: PageDataset, cfg: ActivityFilterConfig = ActivityFilterConfig()) -> Tuple[Set[str], Set[str]]:
    """Return ``(popular_posts, popular_comments)``; likers are counted distinct."""
    posts = {p for p, likers in d.post_likers.items() if len(likers) >= cfg.min_post_likers}
    comments = {c for c, likers in d.comment_likers.items() if len(likers) >= cfg.min_comment_likers}
    return posts, comments


def active_users(d: PageDataset, cfg: ActivityFilterConfig = ActivityFilterConfig()) -> Set[str]:
    """Users who liked a popular post, authored a popular comment, or liked one."""
    posts, comments = popular_content(d, cfg)
    active: Set[str] = set()
    for p in posts:
        active |= d.post_likers[p]
    for c in comments:
        active |= d.comment_likers[c]
        author = d.comment_author.get(c)
        if author is not None:
            active.add(author)
    return active


def common_users(datasets: List[PageDataset]) -> Set[str]:
    if len(datasets) < 2:
        raise IngestError(f"common_users needs at least 2 datasets, got {len(datasets)}")
    sets = [d.users() for d in datasets]
    return set.intersection(*sets)


def restrict_events(d: PageDataset, users: Set[str]) -> PageDataset:
    """Dataset holding only the events whose actor is in ``users``."""
    return PageDataset(d.page_id, [ev for ev in d.events if ev.actor_id in users])
