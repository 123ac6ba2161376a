from __future__ import annotations

import networkx as nx
import pytest

from conftest import from_nx
from stardecomp.colorize import (
    NotCoveredError,
    applicable_routes,
    color_from_partition,
    star_color,
)
from stardecomp.decompose import Partition, PartitionError, decompose_FI1I2I3
from stardecomp.gen import complete, cycle, edgeless, heawood, path, petersen, subdivide
from stardecomp.star import verify_star


def test_forest_partition_three_colors():
    tree = from_nx(nx.random_labeled_tree(40, seed=2))
    c = color_from_partition(tree, Partition.from_assignment("FI", {v: "F" for v in tree.vertices()}))
    assert c.used() == 3 and verify_star(tree, c).ok


def test_c5_single_i_vertex_gives_four():
    p = Partition.from_assignment("FI", {0: "I", 1: "F", 2: "F", 3: "F", 4: "F"})
    c = color_from_partition(cycle(5), p)
    assert c.palette_size == 4 and verify_star(cycle(5), c).ok


def test_c6_three_sets():
    p, _ = decompose_FI1I2I3(cycle(6))
    c = color_from_partition(cycle(6), p)
    assert c.palette_size <= 6 and verify_star(cycle(6), c).ok


def test_invalid_partition_rejected():
    with pytest.raises(PartitionError):
        color_from_partition(cycle(4), Partition.from_assignment("FI", {i: "F" for i in range(4)}))


def test_routes():
    assert star_color(path(6)).route == "forest3"
    cert = star_color(cycle(5))
    assert cert.route == "thm_i_4" and cert.coloring.palette_size == 4
    assert "thm_ii_5" in applicable_routes(cycle(6))
    cert = star_color(complete(4))
    assert cert.route == "exact_solver" and cert.coloring.palette_size == 4


def test_forced_routes_and_refusals():
    g = subdivide(heawood(), 1)
    for route, bound in (("thm_ii_5", 5), ("thm_iii_6", 6)):
        cert = star_color(g, route=route)
        assert cert.coloring.palette_size <= bound and cert.verdict.ok
    with pytest.raises(NotCoveredError):
        star_color(petersen(), route="thm_i_4")
    with pytest.raises(NotCoveredError):
        star_color(complete(25), allow_exact_fallback=False)
    with pytest.raises(ValueError):
        star_color(cycle(5), route="bogus")


def test_certificate_record():
    rec = star_color(cycle(5)).record()
    assert rec["verification"]["status"] == "ok" and rec["partition"] is not None
    assert star_color(edgeless(3)).coloring.used() == 1
