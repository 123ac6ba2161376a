from __future__ import annotations

import random

import networkx as nx
import pytest

from stardecomp.decompose import SCHEMES, Partition
from stardecomp.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def oracle_valid(g: Graph, p: Partition) -> bool:
    h = to_nx(g)
    forest = h.subgraph(p.classes["F"])
    if forest.number_of_nodes() and not nx.is_forest(forest):
        return False
    for c in SCHEMES[p.scheme][1:]:
        members = p.classes[c]
        host = h.subgraph(p.classes["F"] | members) if (p.scheme, c) == ("FI1I2", "I1") else h
        for x in members:
            near = nx.single_source_shortest_path_length(host, x, cutoff=2)
            if any(y != x and y in members for y in near):
                return False
    return True


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261018)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
