import random

import pytest

from mvcomm.graph import Graph

VERDICTS = []


def record_verdict(criterion, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    VERDICTS.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)


def make_graph(edges, users=()):
    g = Graph(users)
    for e in edges:
        g.add_edge(*e)
    return g


def random_graph(rng, n, density, weighted=False):
    users = [f"u{i}" for i in range(n)]
    g = Graph(users)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                w = rng.choice([0.5, 1.0, 2.0, 3.25]) if weighted else 1.0
                g.add_edge(users[i], users[j], w)
    return g


@pytest.fixture
def triangle():
    return make_graph([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def barbell():
    return make_graph([("a", "b"), ("b", "c"), ("a", "c"),
                       ("d", "e"), ("e", "f"), ("d", "f"), ("c", "d")])


@pytest.fixture
def rng():
    return random.Random(12345)


def event_lines(rows):
    return ["\t".join(r) + "\n" for r in rows]


# 8 users covering every branch of the popular-content / active-user rules:
# p1 popular at threshold (2 likers), p2-p4 below it (u3 likes p2 twice),
# c1 liked once (popular: author u4 and liker u5 active), c2 and c4 unliked.
DEFINITION_ROWS = [
    ("POST_LIKE", "P", "p1", "-", "u1", "-", "10"),
    ("POST_LIKE", "P", "p1", "-", "u2", "-", "11"),
    ("POST_LIKE", "P", "p2", "-", "u3", "-", "12"),
    ("POST_LIKE", "P", "p2", "-", "u3", "-", "13"),
    ("COMMENT", "P", "p2", "c1", "u4", "u4", "14"),
    ("COMMENT_LIKE", "P", "p2", "c1", "u5", "-", "15"),
    ("COMMENT", "P", "p1", "c2", "u6", "u6", "16"),
    ("POST_LIKE", "P", "p3", "-", "u7", "-", "17"),
    ("COMMENT", "P", "p3", "c4", "u8", "u8", "18"),
    ("POST_LIKE", "P", "p4", "-", "u8", "-", "19"),
]


@pytest.fixture
def definition_dataset():
    from mvcomm.ingest import parse_events

    datasets, diags = parse_events(event_lines(DEFINITION_ROWS))
    assert not diags
    return datasets[0]
