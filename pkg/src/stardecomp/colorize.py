"""Turn partitions into star colorings and pick the strongest applicable bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decompose import (
    SCHEMES,
    Partition,
    PartitionError,
    decompose_FI,
    decompose_FI1I2,
    decompose_FI1I2I3,
    verify_partition,
)
from .density import mad_below
from .graph import Graph, girth, is_forest
from .star import Coloring, StarVerdict, optimal_star_coloring, star_color_forest, verify_star

ROUTES = ("forest3", "thm_i_4", "thm_ii_5", "thm_iii_6", "exact_solver")
ROUTE_BOUND = {"forest3": 3, "thm_i_4": 4, "thm_ii_5": 5, "thm_iii_6": 6}
EXACT_LIMIT = 20


class NotCoveredError(RuntimeError):
    pass


@dataclass(frozen=True)
class ColoringCertificate:
    coloring: Coloring
    route: str
    partition: Partition | None
    verdict: StarVerdict

    def record(self) -> dict:
        return {
            "route": self.route,
            "palette_size": self.coloring.palette_size,
            "colors_used": self.coloring.used(),
            "coloring": {v: c for v, c in sorted(self.coloring.colors.items())},
            "partition": None if self.partition is None else {c: sorted(vs) for c, vs in self.partition.classes.items()},
            "verification": self.verdict.record(),
        }


def color_from_partition(g: Graph, p: Partition) -> Coloring:
    """F gets colors 0-2 by root distance; each independent class a fresh color."""
    verdict = verify_partition(g, p)
    if not verdict.ok:
        raise PartitionError(f"invalid partition: {verdict.reason} {verdict.witness}")
    forest = star_color_forest(g.induced(p.classes["F"]))
    colors = dict(forest.colors)
    for i, cname in enumerate(SCHEMES[p.scheme][1:]):
        for v in p.classes[cname]:
            colors[v] = 3 + i
    coloring = Coloring(colors, 2 + len(SCHEMES[p.scheme]))
    check = verify_star(g, coloring)
    if not check.ok:
        raise AssertionError(f"assembled coloring is not a star coloring: {check.record()}")
    return coloring


def applicable_routes(g: Graph) -> list[str]:
    """Theorem routes whose hypotheses hold, strongest first."""
    out = ["forest3"] if is_forest(g) else []
    if g.order() == 0:
        return out
    if mad_below(g, Fraction(26, 11)):
        out.append("thm_i_4")
    if girth(g) >= 6:
        if mad_below(g, Fraction(18, 7)):
            out.append("thm_ii_5")
        if mad_below(g, Fraction(8, 3)):
            out.append("thm_iii_6")
    return out


def _by_route(g: Graph, route: str) -> tuple[Coloring, Partition | None]:
    if route == "forest3":
        return star_color_forest(g), None
    if route == "exact_solver":
        if g.order() > EXACT_LIMIT:
            raise NotCoveredError(f"exact solver limited to {EXACT_LIMIT} vertices")
        col = optimal_star_coloring(g, g.order())
        assert col is not None
        return col, None
    decompose = {"thm_i_4": decompose_FI, "thm_ii_5": decompose_FI1I2, "thm_iii_6": decompose_FI1I2I3}[route]
    p, _ = decompose(g)
    return color_from_partition(g, p), p


def star_color(g: Graph, allow_exact_fallback: bool = True, route: str = "auto") -> ColoringCertificate:
    """Color ``g`` by the first applicable route (or the requested one)."""
    if route == "auto":
        routes = applicable_routes(g)
        if routes:
            chosen = routes[0]
        elif allow_exact_fallback and g.order() <= EXACT_LIMIT:
            chosen = "exact_solver"
        else:
            raise NotCoveredError("no theorem applies and the exact fallback is unavailable")
    else:
        if route not in ROUTES:
            raise ValueError(f"unknown route {route!r}")
        if route != "exact_solver" and route not in applicable_routes(g):
            raise NotCoveredError(f"route {route} does not apply to this graph")
        chosen = route
    coloring, part = _by_route(g, chosen)
    verdict = verify_star(g, coloring)
    if not verdict.ok:
        raise AssertionError(f"route {chosen} produced an invalid coloring")
    bound = ROUTE_BOUND.get(chosen)
    if bound is not None and coloring.palette_size > bound:
        raise AssertionError(f"route {chosen} used {coloring.palette_size} colors")
    return ColoringCertificate(coloring, chosen, part, verdict)
