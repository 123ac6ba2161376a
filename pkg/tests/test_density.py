from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import gnp
from stardecomp.density import (
    DensityError,
    density,
    format_rational,
    mad_below,
    mad_bruteforce,
    mad_exact,
    parse_rational,
)
from stardecomp.gen import complete, cycle, edgeless, path, petersen, star, subdivide


@pytest.mark.parametrize(
    "g,expected",
    [
        (cycle(5), Fraction(2)),
        (edgeless(4), Fraction(0)),
        (path(4), Fraction(3, 2)),
        (complete(4), Fraction(3)),
        (star(5), Fraction(5, 3)),
        (petersen(), Fraction(3)),
    ],
)
def test_known_values(g, expected):
    assert mad_exact(g).value == expected
    assert mad_bruteforce(g).value == expected


def test_witness_is_densest():
    r = mad_bruteforce(cycle(5))
    assert sorted(r.witness) == [0, 1, 2, 3, 4]
    g = complete(4)
    h = subdivide(g, 1)
    big = h.n
    from stardecomp.graph import Graph

    joined = Graph.from_edges(big + 4, list(h.edges()) + [(big + i, big + j) for i in range(4) for j in range(i + 1, 4)])
    r = mad_exact(joined)
    assert r.value == 3 and sorted(r.witness) == [big, big + 1, big + 2, big + 3]
    assert density(joined, r.witness) == r.value


def test_mad_below_is_strict():
    assert mad_below(cycle(5), Fraction(26, 11))
    assert not mad_below(cycle(5), Fraction(2))
    assert not mad_below(complete(4), Fraction(8, 3))


def test_oracle_agreement_small(rng):
    for _ in range(50):
        g = gnp(rng.randint(1, 12), rng.choice([0.15, 0.3, 0.5]), rng)
        assert mad_exact(g).value == mad_bruteforce(g).value


def test_mad_below_agrees_with_value(rng):
    for _ in range(30):
        g = gnp(rng.randint(2, 14), 0.25, rng)
        value = mad_exact(g).value
        for bound in (value, value + Fraction(1, 97), value - Fraction(1, 97)):
            assert mad_below(g, bound) == (value < bound)


def test_errors_and_formatting():
    with pytest.raises(DensityError):
        mad_exact(edgeless(0))
    with pytest.raises(DensityError):
        mad_bruteforce(edgeless(17))
    assert format_rational(Fraction(2)) == "2/1"
    assert parse_rational("26/11") == Fraction(26, 11)
    assert mad_exact(edgeless(0).__class__.from_edges(1, [])).value == 0


def test_seeded_reproducible():
    a = gnp(10, 0.4, random.Random(3))
    b = gnp(10, 0.4, random.Random(3))
    assert mad_exact(a) == mad_exact(b)
