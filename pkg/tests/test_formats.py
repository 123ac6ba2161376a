from __future__ import annotations

import networkx as nx
import pytest

from conftest import from_nx, gnp, to_nx
from stardecomp.gen import cycle, edgeless
from stardecomp.formats import (
    ParseError,
    guess_format,
    iter_graph6,
    parse_graph,
    parse_graph6,
    serialize_graph,
    serialize_graph6,
)


def test_edgelist_path():
    g = parse_graph("0 1\n1 2", "edgelist")
    assert [g.degree(v) for v in g.vertices()] == [1, 2, 1]


def test_dimacs_cycle_matches_edgelist():
    text = "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"
    g = parse_graph(text, "dimacs")
    assert all(g.degree(v) == 2 for v in g.vertices())
    assert g == parse_graph("0 1\n1 2\n2 3\n3 4\n4 0\n", "edgelist")


def test_serialize_examples():
    assert serialize_graph(edgeless(0), "edgelist") == "n=0\n"
    body = serialize_graph(cycle(5), "edgelist").splitlines()
    assert body[0] == "n=5" and len(body[1:]) == 5


@pytest.mark.parametrize("text", ["D~{", "?", "@", "A_", "Ch", "IheA@GUAo"])
def test_graph6_roundtrip_bytes(text):
    assert serialize_graph6(parse_graph6(text)) == text


def test_graph6_matches_networkx(rng):
    for n in (0, 1, 5, 30, 70, 130):
        g = gnp(n, 0.2, rng)
        ours = serialize_graph6(g)
        theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert ours == theirs
        assert parse_graph6(theirs) == from_nx(nx.from_graph6_bytes(theirs.encode())) or n == 0


@pytest.mark.parametrize("fmt", ["graph6", "dimacs", "edgelist"])
def test_roundtrip_random(fmt, rng):
    for _ in range(25):
        g = gnp(rng.randint(1, 25), 0.25, rng)
        assert parse_graph(serialize_graph(g, fmt), fmt) == g


@pytest.mark.parametrize(
    "text,fmt,line",
    [
        ("0 1\n1 1\n", "edgelist", 2),
        ("0 1\n1 0\n", "edgelist", 2),
        ("0 1\nx y\n", "edgelist", 2),
        ("p edge 3 1\ne 1 4\n", "dimacs", 2),
    ],
)
def test_parse_errors_carry_line(text, fmt, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text, fmt)
    assert info.value.line == line


def test_bad_graph6():
    with pytest.raises(ParseError):
        parse_graph6("D~")
    with pytest.raises(ParseError):
        list(iter_graph6(["Ch", "", "~"]))


def test_guess_format():
    assert guess_format("p edge 2 1\ne 1 2\n") == "dimacs"
    assert guess_format("Ch\n") == "graph6"
    assert guess_format("0 1\n") == "edgelist"
    assert guess_format("anything", "x.g6") == "graph6"
