import io

import pytest
from hypothesis import given, strategies as st

from mvcomm.ingest import (
    ActivityFilterConfig,
    EventKind,
    IngestError,
    PageDataset,
    active_users,
    common_users,
    dataset_stats,
    parse_events,
    popular_content,
    write_events,
)

from conftest import event_lines


def like(page, post, user, ts="0"):
    return (EventKind.POST_LIKE.value, page, post, "-", user, "-", ts)


def comment(page, post, cid, user, ts="0"):
    return ("COMMENT", page, post, cid, user, user, ts)


def clike(page, post, cid, user, ts="0"):
    return ("COMMENT_LIKE", page, post, cid, user, "-", ts)


def dataset(rows, page="P"):
    ds, _ = parse_events(event_lines(rows))
    return ds[0] if ds else PageDataset(page)


def test_parse_three_likes():
    ds, diags = parse_events(event_lines([like("P", "p", u) for u in "abc"]))
    assert len(ds) == 1 and len(ds[0].events) == 3
    assert diags == []


def test_parse_malformed_line_reported_with_number():
    lines = ["#header\n", "\t".join(like("P", "p", "a")) + "\n", "garbage\tline\n"]
    ds, diags = parse_events(lines)
    assert len(ds[0].events) == 1
    assert len(diags) == 1 and diags[0].line == 3


def test_parse_dangling_comment_like_kept():
    ds, diags = parse_events(event_lines([clike("P", "p", "c9", "a")]))
    assert len(ds[0].events) == 1
    assert len(diags) == 1 and "c9" in diags[0].message
    assert diags[0].line == 1


def test_parse_empty_input_warns():
    ds, diags = parse_events([])
    assert ds == []
    assert [d.level for d in diags] == ["warning"]


@pytest.mark.parametrize("row", [
    ("LIKE", "P", "p", "-", "a", "-", "0"),
    ("POST_LIKE", "P", "p", "-", "a", "-", "noon"),
    ("COMMENT", "P", "p", "-", "a", "a", "0"),
    ("COMMENT", "P", "p", "c", "a", "b", "0"),
    ("COMMENT", "P", "p", "c", "a", "-", "0"),
    ("COMMENT_LIKE", "P", "p", "-", "a", "-", "0"),
    ("POST_LIKE", "P", "-", "-", "a", "-", "0"),
])
def test_parse_rejects_bad_rows(row):
    ds, diags = parse_events(event_lines([row]))
    assert ds == []
    assert diags[0].level == "error" and diags[0].line == 1


def test_strict_mode_raises():
    with pytest.raises(IngestError, match=":1:"):
        parse_events(["nonsense\n"], strict=True)
    with pytest.raises(IngestError):
        parse_events(event_lines([clike("P", "p", "c9", "a")]), strict=True)


def test_pages_grouped():
    ds, _ = parse_events(event_lines([like("A", "p", "x"), like("B", "p", "y"), like("A", "q", "z")]))
    assert [d.page_id for d in ds] == ["A", "B"]
    assert len(ds[0].events) == 2


def test_write_events_round_trip():
    rows = [like("P", "p", "a", "5"), comment("P", "p", "c", "b", "6"), clike("P", "p", "c", "a", "7")]
    d = dataset(rows)
    buf = io.StringIO()
    write_events(d.events, buf)
    again, diags = parse_events(buf.getvalue().splitlines(True))
    assert not diags
    assert again[0].events == d.events


def test_dataset_with_foreign_event_rejected():
    ev = dataset([like("A", "p", "x")]).events[0]
    with pytest.raises(IngestError):
        PageDataset("B", [ev])


def test_stats():
    assert dataset_stats(dataset([like("P", "p", "a"), like("P", "p", "b")])).as_tuple() == (2, 1, 0, 2)
    assert dataset_stats(PageDataset("P")).as_tuple() == (0, 0, 0, 0)
    d = dataset([like("P", "p", "a"), comment("P", "p", "c", "a")])
    assert dataset_stats(d).as_tuple() == (1, 1, 1, 1)


def test_popular_posts_threshold():
    d = dataset([like("P", "p1", "a"), like("P", "p1", "b"), like("P", "p2", "c"),
                 comment("P", "p2", "c1", "d"), clike("P", "p2", "c1", "a")])
    posts, comments = popular_content(d)
    assert posts == {"p1"}
    assert comments == {"c1"}


def test_duplicate_likes_count_once():
    d = dataset([like("P", "p", "a"), like("P", "p", "a")])
    assert popular_content(d)[0] == set()


def test_active_users_clauses():
    d = dataset([like("P", "p1", "a"), like("P", "p1", "b"),
                 comment("P", "p1", "c1", "x"), clike("P", "p1", "c1", "y"),
                 comment("P", "p1", "c2", "z")])
    assert active_users(d) == {"a", "b", "x", "y"}
    assert active_users(PageDataset("P")) == set()


def test_filter_config_validation():
    with pytest.raises(ValueError):
        ActivityFilterConfig(min_post_likers=0)
    with pytest.raises(ValueError):
        ActivityFilterConfig(min_comment_likers=1.5)


def test_min_post_likers_one_marks_every_liked_post():
    d = dataset([like("P", f"p{i}", f"u{i}") for i in range(5)])
    posts, _ = popular_content(d, ActivityFilterConfig(min_post_likers=1))
    assert posts == {f"p{i}" for i in range(5)}


def test_common_users():
    a = dataset([like("A", "p", u) for u in "abc"])
    b = dataset([like("B", "p", u) for u in "bcd"])
    assert common_users([a, b]) == {"b", "c"}
    c = dataset([like("C", "p", u) for u in "xy"])
    assert common_users([a, c]) == set()
    three = [dataset([like("A", "p", u) for u in "ab"]), dataset([like("B", "p", u) for u in "bc"]),
             dataset([like("C", "p", "b")])]
    assert common_users(three) == {"b"}
    with pytest.raises(IngestError):
        common_users([a])


def test_common_users_order_invariant_and_idempotent():
    a = dataset([like("A", "p", u) for u in "abcq"])
    b = dataset([like("B", "p", u) for u in "bcdq"])
    c = dataset([like("C", "p", u) for u in "cq"])
    assert common_users([a, b, c]) == common_users([c, a, b]) == common_users([a, b, c, a, c])


users = st.sampled_from([f"u{i}" for i in range(6)])
posts = st.sampled_from(["p1", "p2", "p3"])
comments = st.sampled_from(["c1", "c2", "c3"])
event_rows = st.one_of(
    st.builds(lambda p, u: like("P", p, u), posts, users),
    st.builds(lambda p, c, u: comment("P", p, c, u), posts, comments, users),
    st.builds(lambda p, c, u: clike("P", p, c, u), posts, comments, users),
)


@given(st.lists(event_rows, max_size=25), st.lists(event_rows, max_size=10),
       st.integers(1, 3), st.integers(1, 2))
def test_active_users_monotone(base, extra, mp, mc):
    cfg = ActivityFilterConfig(mp, mc)
    small = dataset(base)
    big = dataset(base + extra)
    assert active_users(small, cfg) <= active_users(big, cfg)
