from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import gnp
from stardecomp.config import FAMILIES, Context, build_J
from stardecomp.discharge import (
    BANK,
    THRESHOLDS,
    ChargeLedger,
    apply_rules,
    audit_discharging,
    charge_identity,
)
from stardecomp.gen import complete, config_free, cycle, subdivide, sweep
from stardecomp.graph import Graph


def bad_triangle_pair() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 3)])


def test_two_regular_keeps_charge():
    led = apply_rules(cycle(7), "L2")
    assert not led.transfers and led.bank == 0
    assert set(led.final.values()) == {2}
    rep = audit_discharging(cycle(7), "L2", led)
    assert rep.vacuous and rep.passed


def test_bad_three_vertex_l2():
    g = bad_triangle_pair()
    assert Context(g).is_bad3(0) and len(Context(g).J[0]) == 3
    led = apply_rules(g, "L2")
    assert led.final[0] == 3 - 2 * Fraction(4, 11) + Fraction(1, 11) == Fraction(26, 11)


def test_l3_two_vertex_between_big_vertices():
    g = subdivide(complete(4), {(0, 1): 1})
    led = apply_rules(g, "L3")
    assert led.final[4] == 2 + 2 * Fraction(2, 7) == Fraction(18, 7)


def test_l3_four_vertex_with_three_long_threads():
    edges = [(0, 1), (1, 2), (2, 10), (0, 3), (3, 4), (4, 11), (0, 5), (5, 6), (6, 12),
             (0, 10), (10, 11), (11, 12), (12, 10)]
    g = Graph.from_edges(13, edges)
    assert Context(g).sig(0) == (0, 2, 2, 2)
    led = apply_rules(g, "L3")
    assert led.final[0] == 4 - 3 * Fraction(4, 7) + Fraction(2, 7) == Fraction(18, 7)


def light_five_vertex() -> Graph:
    edges = [(0, 1), (1, 2), (2, 20), (0, 3), (3, 4), (4, 20), (0, 5), (5, 6), (6, 21), (0, 7), (7, 8), (8, 21),
             (0, 20), (20, 21), (20, 22), (21, 22), (22, 23), (23, 20), (21, 23)]
    return Graph.from_edges(24, edges)


def test_l5_light_five_vertex_and_two_vertex():
    g = light_five_vertex()
    assert Context(g).sig(0) == (0, 2, 2, 2, 2) and g.degree(20) >= 4
    led = apply_rules(g, "L5")
    assert led.final[0] == 5 - 4 * Fraction(2, 3) + Fraction(1, 3) == Fraction(8, 3)
    # vertex 1 is a 2_{0,1}-vertex next to the 5-vertex
    assert led.final[1] == 2 + Fraction(2, 3) == Fraction(8, 3)


def test_l3_three_one_one_one_context_is_caught_by_detector():
    g = subdivide(complete(4), {(0, 1): 1, (0, 2): 1, (0, 3): 1})
    led = apply_rules(g, "L3")
    assert led.final[0] == 3 - 3 * Fraction(2, 7) == Fraction(15, 7)
    rep = audit_discharging(g, "L3", led)
    assert rep.vacuous and rep.passed


def test_empty_ledger_identity():
    assert charge_identity(ChargeLedger("L2", {}, {}))
    assert charge_identity(apply_rules(Graph.from_edges(0, []), "L5"))


def test_all_l2_rules_fire_on_fixture():
    # bad triangle pair (R1 at 4/11, R3) plus a 3_{0,1,1} fed by a plain 3-vertex (R2) and a long thread (R4)
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 3),
             (6, 7), (7, 8), (8, 9), (9, 6), (6, 10), (7, 11), (8, 12), (9, 13),
             (10, 14), (14, 11), (12, 15), (15, 16), (16, 13), (10, 17), (17, 18), (18, 19), (19, 11)]
    g = Graph.from_edges(20, edges)
    led = apply_rules(g, "L2")
    assert {t.rule for t in led.transfers} == {"R1", "R2", "R3", "R4"}
    assert charge_identity(led)


@pytest.mark.parametrize("family", FAMILIES)
def test_conservation_on_random_graphs(family, rng):
    for _ in range(60):
        g = gnp(rng.randint(2, 25), 0.15, rng)
        assert charge_identity(apply_rules(g, family))


@pytest.mark.parametrize("family", FAMILIES)
def test_audits_on_configuration_free_graphs(family, rng):
    for _ in range(40):
        g = config_free(family, rng)
        rep = audit_discharging(g, family)
        assert not rep.vacuous and rep.passed, rep.record()
        assert rep.min_charge >= THRESHOLDS[family]


@pytest.mark.parametrize("family", ["L3", "L5"])
def test_audits_at_girth_six(family, rng):
    for _ in range(6):
        g = config_free(family, rng, girth_min=6)
        rep = audit_discharging(g, family)
        assert not rep.vacuous and rep.passed, rep.record()


def test_l2_bank_and_j_leaf_count(rng):
    for _ in range(60):
        g = config_free("L2", rng)
        led = apply_rules(g, "L2")
        assert led.bank >= 0
        j = build_J(g)
        if all(s in ("tree", "cycle") for s in j.component_shapes()):
            assert j.leaves() >= j.threes()
        # a bad 3-vertex never takes part in an R2 transfer
        ctx = Context(g)
        for t in led.transfers:
            if t.rule == "R2":
                assert not ctx.is_bad3(t.source) and not ctx.is_bad3(t.sink)


def test_in_hypothesis_graphs_are_vacuous():
    for _, g in sweep(30, Fraction(18, 7), 6, seed=1):
        rep = audit_discharging(g, "L3")
        assert rep.vacuous and rep.conserved


def test_transfer_records():
    led = apply_rules(bad_triangle_pair(), "L2")
    recs = [t.record() for t in led.transfers]
    assert any(r["from"] == "bank" for r in recs)
    assert all(t.source == BANK or t.source in led.final for t in led.transfers)
    with pytest.raises(ValueError):
        apply_rules(cycle(3), "L9")
