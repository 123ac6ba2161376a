from __future__ import annotations

import random
from fractions import Fraction

import pytest

from stardecomp.density import mad_exact
from stardecomp.formats import serialize_graph, serialize_graph6
from stardecomp.gen import (
    METHODS,
    GeneratorError,
    GeneratorSpec,
    all_graphs,
    cycle,
    extremal_search,
    named,
    random_regular,
    random_sparse,
    satisfies,
    sweep,
)
from stardecomp.graph import girth
from stardecomp.star import exact_star_chromatic


def test_named():
    assert named("C5") == cycle(5)
    p4 = named("P4")
    assert p4.order() == 4 and p4.size() == 3
    pete = named("petersen")
    assert (pete.order(), pete.size(), girth(pete)) == (10, 15, 5)
    assert named("K_{2,3}").size() == 6
    assert named("sub(K4,2)").order() == 16
    with pytest.raises(KeyError):
        named("nonsense")


@pytest.mark.parametrize("method", METHODS)
def test_random_sparse_meets_spec(method):
    for spec in (GeneratorSpec(30, Fraction(26, 11), 3, 1, method), GeneratorSpec(30, Fraction(18, 7), 6, 2, method)):
        g = random_sparse(spec)
        assert mad_exact(g).value < spec.mad_bound
        assert girth(g) >= spec.girth_min


def test_determinism():
    spec = GeneratorSpec(30, Fraction(8, 3), 6, 7)
    a = serialize_graph(random_sparse(spec))
    b = serialize_graph(random_sparse(spec))
    assert a == b
    assert [serialize_graph6(g) for _, g in sweep(5, Fraction(26, 11), 3, seed=4)] == \
        [serialize_graph6(g) for _, g in sweep(5, Fraction(26, 11), 3, seed=4)]


def test_infeasible_spec():
    with pytest.raises(GeneratorError):
        random_sparse(GeneratorSpec(10, Fraction(1, 2), 3, 0))


def test_sweep_graphs_satisfy_hypotheses():
    for spec, g in sweep(30, Fraction(18, 7), 6, seed=9):
        assert satisfies(g, spec.mad_bound, spec.girth_min)


def test_all_graphs_counts():
    assert sum(1 for _ in all_graphs(4)) == 64
    with pytest.raises(GeneratorError):
        random_regular(5, 3, random.Random(0))


def test_extremal_small_targets():
    recs = extremal_search(5, 3)
    best = recs[0]
    assert best.mad == 2 and best.star_chromatic == 4
    assert best.graph.order() == 5 and best.graph.size() == 5 and all(best.graph.degree(v) == 2 for v in best.graph.vertices())
    recs = extremal_search(4, 2)
    assert recs[0].mad == Fraction(3, 2)
    assert extremal_search(3, 1)[0].mad == 1


def test_extremal_stream_and_recheck():
    lines = [serialize_graph6(cycle(n)) for n in range(3, 9)] + [serialize_graph6(named("petersen"))]
    recs = extremal_search(12, 3, lines)
    # among cycles only C5 needs four colors
    assert {r.graph.order() for r in recs} == {5, 10}
    for r in recs:
        assert exact_star_chromatic(r.graph, 6) == r.star_chromatic > 3
    assert [r.row() for r in extremal_search(12, 3, lines, workers=2)] == [r.row() for r in recs]
    capped = extremal_search(12, 3, lines, cap=4)
    assert capped[-1].capped and capped[-1].row().endswith(">4")
