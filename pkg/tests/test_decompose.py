from __future__ import annotations

import random
from fractions import Fraction

import networkx as nx
import pytest

from conftest import from_nx, oracle_valid
from stardecomp.config import ConfigurationMatch
from stardecomp.decompose import (
    SCHEMES,
    ExtensionNotFound,
    Partition,
    PartitionError,
    PreconditionError,
    decompose_FI,
    decompose_FI1I2,
    decompose_FI1I2I3,
    extend_by_search,
    verify_partition,
)
from stardecomp.gen import complete, cycle, path, petersen, subdivide, sweep
from stardecomp.graph import Graph, girth


def test_verify_examples():
    tree = from_nx(nx.random_labeled_tree(12, seed=1))
    for scheme, names in SCHEMES.items():
        p = Partition.from_assignment(scheme, {v: "F" for v in tree.vertices()})
        assert verify_partition(tree, p).ok
    p = Partition.from_assignment("FI", {0: "I", 1: "F", 2: "F", 3: "F", 4: "F"})
    assert verify_partition(cycle(5), p).ok
    p = Partition.from_assignment("FI1I2", {0: "I2", 1: "F", 2: "I2"})
    v = verify_partition(path(3), p)
    assert not v.ok and v.witness == (0, 1, 2)


def test_i1_distance_is_measured_in_f_plus_i1():
    # I1 vertices 0 and 2 share only the I2 neighbor 1: allowed for I1, not for I2
    g = path(3)
    assert verify_partition(g, Partition.from_assignment("FI1I2", {0: "I1", 1: "I2", 2: "I1"})).ok
    assert not verify_partition(g, Partition.from_assignment("FI1I2I3", {0: "I1", 1: "I2", 2: "I1"})).ok


def test_forest_violation_reports_cycle():
    g = cycle(4)
    v = verify_partition(g, Partition.from_assignment("FI", {i: "F" for i in range(4)}))
    assert not v.ok and sorted(v.witness) == [0, 1, 2, 3]


def test_coverage_errors():
    with pytest.raises(PartitionError):
        verify_partition(cycle(3), Partition.from_assignment("FI", {0: "F", 1: "F"}))
    with pytest.raises(PartitionError):
        Partition.from_assignment("FI", {0: "I2"})


def test_trees_go_to_f():
    tree = from_nx(nx.random_labeled_tree(30, seed=9))
    for fn in (decompose_FI, decompose_FI1I2, decompose_FI1I2I3):
        p, trace = fn(tree)
        assert p.classes["F"] == frozenset(tree.vertices())
        assert trace.replay(tree)


def test_c5_fi():
    p, trace = decompose_FI(cycle(5))
    assert len(p.classes["I"]) == 1 and len(p.classes["F"]) == 4
    assert oracle_valid(cycle(5), p) and trace.replay(cycle(5))


def test_c6_and_subdivided_k4():
    for fn in (decompose_FI1I2, decompose_FI1I2I3):
        p, _ = fn(cycle(6))
        assert oracle_valid(cycle(6), p)
    g = subdivide(complete(4), 2)
    assert girth(g) == 9
    p, _ = decompose_FI1I2I3(g)
    assert oracle_valid(g, p)


def test_preconditions():
    with pytest.raises(PreconditionError):
        decompose_FI(complete(4))
    with pytest.raises(PreconditionError):
        decompose_FI1I2(cycle(5))
    p, _ = decompose_FI1I2(cycle(5), require_girth=False)
    assert oracle_valid(cycle(5), p)
    with pytest.raises(PreconditionError):
        decompose_FI1I2I3(petersen())


@pytest.mark.parametrize(
    "scheme,bound,girth_min",
    [("FI", Fraction(26, 11), 3), ("FI1I2", Fraction(18, 7), 6), ("FI1I2I3", Fraction(8, 3), 6)],
)
def test_pipeline_against_oracle(scheme, bound, girth_min):
    fn = {"FI": decompose_FI, "FI1I2": decompose_FI1I2, "FI1I2I3": decompose_FI1I2I3}[scheme]
    chooser = random.Random(5)
    for i, (_, g) in enumerate(sweep(60, bound, girth_min, seed=21)):
        kw = {"chooser": chooser} if i % 2 else {"cross_check": True}
        p, trace = fn(g, **kw)
        assert oracle_valid(g, p)
        assert trace.replay(g)
        assert sum(trace.methods().values()) == len(trace.steps)


def test_girth_flag_dropped():
    # the girth condition of the two-set scheme is optional
    for _, g in sweep(40, Fraction(18, 7), 3, seed=8):
        p, _ = decompose_FI1I2(g, require_girth=False)
        assert oracle_valid(g, p)


def test_extend_leaf_goes_to_f():
    g = path(4)
    partial = Partition.from_assignment("FI", {0: "F", 1: "F", 2: "F"})
    full = extend_by_search(g, partial, [3], "FI")
    assert full.class_of(3) == "F"


def test_extend_claim1_neighbourhood():
    # x = 2 on a 7-cycle; its second neighbours 0 and 4 are in F, and the I vertices 7, 8
    # (pendant at 0 and 4) keep both neighbours of x out of I
    g = Graph.from_edges(9, [(i, (i + 1) % 7) for i in range(7)] + [(0, 7), (4, 8)])
    partial = {0: "F", 4: "F", 5: "F", 6: "F", 7: "I", 8: "I"}
    full = extend_by_search(g, Partition.from_assignment("FI", partial), [1, 2, 3], "FI")
    assert verify_partition(g, full).ok
    assert full.class_of(2) == "I" and full.class_of(1) == full.class_of(3) == "F"


def test_extend_reports_failure():
    g = complete(4)
    partial = Partition.from_assignment("FI", {0: "I", 1: "F", 2: "F"})
    with pytest.raises(ExtensionNotFound):
        extend_by_search(g, partial, [3], "FI")
    ok = Partition.from_assignment("FI", {0: "F", 1: "F"})
    assert extend_by_search(complete(3), ok, [2], "FI").class_of(2) == "I"


def test_mutations_rejected(rng):
    broken = 0
    graphs = [g for _, g in sweep(20, Fraction(26, 11), 3, seed=2)]
    parts = [decompose_FI(g)[0] for g in graphs]
    while broken < 150:
        i = rng.randrange(len(graphs))
        g, p = graphs[i], parts[i]
        a = dict(p.assignment())
        v = rng.choice(list(a))
        a[v] = "I" if a[v] == "F" else "F"
        q = Partition.from_assignment("FI", a)
        expected = oracle_valid(g, q)
        assert verify_partition(g, q).ok == expected
        broken += not expected


def test_step_record_shape():
    _, trace = decompose_FI(cycle(5))
    rec = trace.steps[0].record()
    assert {"family", "kind", "placements", "method"} <= set(rec)
    assert isinstance(trace.steps[0].match, ConfigurationMatch)
