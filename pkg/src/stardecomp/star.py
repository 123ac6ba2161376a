"""Star colorings: verifier, forest 3-coloring and an exact solver.

A proper coloring is a star coloring iff no path on four vertices is
2-colored.  A bicolored ``a-u-w-d`` path exists exactly when some edge ``uw``
has two neighbors of ``u`` colored ``c(w)`` and two neighbors of ``w`` colored
``c(u)``; both the verifier and the solver use that middle-edge test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .graph import Graph, bfs_distances, components, is_forest


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    colors: Mapping[int, int]
    palette_size: int

    def __post_init__(self) -> None:
        for v, c in self.colors.items():
            if not 0 <= c < self.palette_size:
                raise ColoringError(f"color {c} of vertex {v} outside 0..{self.palette_size - 1}")

    @classmethod
    def from_mapping(cls, colors: Mapping[int, int]) -> "Coloring":
        return cls(dict(colors), 1 + max(colors.values(), default=-1))

    def used(self) -> int:
        return len(set(self.colors.values()))


@dataclass(frozen=True)
class StarVerdict:
    ok: bool
    violation: tuple[int, ...] | None = None
    kind: str | None = None  # "edge" or "p4"

    def record(self) -> dict:
        return {"status": "ok" if self.ok else "violation", "kind": self.kind,
                "witness": list(self.violation) if self.violation else None}


def _check_cover(g: Graph, c: Coloring) -> None:
    missing = [v for v in g.vertices() if v not in c.colors]
    if missing:
        raise ColoringError(f"uncolored vertices: {missing[:10]}")


def find_bicolored_p4(g: Graph, c: Coloring) -> tuple[int, int, int, int] | None:
    """First 2-colored 3-edge path ``(a, u, w, d)`` in vertex order, or None."""
    col = c.colors
    for u in g.vertices():
        cu = col[u]
        for w in g.neighbors(u):
            cw = col[w]
            a = next((x for x in g.neighbors(u) if x != w and col[x] == cw), None)
            if a is None:
                continue
            d = next((y for y in g.neighbors(w) if y != u and col[y] == cu), None)
            if d is not None and a != d:
                return (a, u, w, d)
    return None


def verify_star(g: Graph, c: Coloring) -> StarVerdict:
    _check_cover(g, c)
    col = c.colors
    for u, w in g.edges():
        if col[u] == col[w]:
            return StarVerdict(False, (u, w), "edge")
    path = find_bicolored_p4(g, c)
    if path is not None:
        return StarVerdict(False, path, "p4")
    return StarVerdict(True)


def has_bicolored_cycle(g: Graph, c: Coloring) -> bool:
    """Acyclicity check used as an independent cross-check on small inputs."""
    palette = sorted(set(c.colors.values()))
    for i, a in enumerate(palette):
        for b in palette[i + 1:]:
            sub = g.induced(v for v in g.vertices() if c.colors[v] in (a, b))
            if not is_forest(sub):
                return True
    return False


def star_color_forest(g: Graph) -> Coloring:
    """Color each tree by root distance: ``(1 + d(root, v)) mod 3``."""
    if not is_forest(g):
        raise ColoringError("star_color_forest needs a forest")
    colors: dict[int, int] = {}
    for comp in components(g):
        root = comp[0]
        for v, d in bfs_distances(g, root).items():
            colors[v] = (1 + d) % 3
    return Coloring(colors, 3)


# ---------------------------------------------------------------------------
# exact solver


@dataclass
class _Search:
    nbrs: list[list[int]]
    k: int
    color: list[int] = field(default_factory=list)
    # count[v][x]: colored neighbors of v with color x
    count: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        n = len(self.nbrs)
        self.color = [-1] * n
        self.count = [[0] * self.k for _ in range(n)]

    def ok_to_add(self, v: int, x: int) -> bool:
        color, count, nbrs = self.color, self.count, self.nbrs
        if count[v][x]:
            return False
        # tentatively apply
        for u in nbrs[v]:
            count[u][x] += 1
        good = True
        for u in nbrs[v]:
            cu = color[u]
            if cu < 0:
                continue
            # middle edge v-u
            if count[v][cu] >= 2 and count[u][x] >= 2:
                good = False
                break
            # middle edges u-w with c(w) == x gained a second x-neighbor at u
            if count[u][x] >= 2:
                for w in nbrs[u]:
                    if w != v and color[w] == x and count[w][cu] >= 2:
                        good = False
                        break
                if not good:
                    break
        for u in nbrs[v]:
            count[u][x] -= 1
        return good

    def assign(self, v: int, x: int) -> None:
        self.color[v] = x
        for u in self.nbrs[v]:
            self.count[u][x] += 1

    def unassign(self, v: int) -> None:
        x = self.color[v]
        self.color[v] = -1
        for u in self.nbrs[v]:
            self.count[u][x] -= 1

    def run(self, order: list[int]) -> bool:
        n = len(order)

        def rec(i: int, used: int) -> bool:
            if i == n:
                return True
            v = order[i]
            for x in range(min(used + 1, self.k)):
                if self.ok_to_add(v, x):
                    self.assign(v, x)
                    if rec(i + 1, max(used, x + 1)):
                        return True
                    self.unassign(v)
            return False

        return rec(0, 0)


def _search_order(nbrs: list[list[int]]) -> list[int]:
    """Highest degree first, then most already-ordered neighbors."""
    n = len(nbrs)
    placed = [False] * n
    weight = [0] * n
    order: list[int] = []
    for _ in range(n):
        v = max((u for u in range(n) if not placed[u]), key=lambda u: (weight[u], len(nbrs[u]), -u))
        placed[v] = True
        order.append(v)
        for w in nbrs[v]:
            weight[w] += 1
    return order


def _indexed(g: Graph) -> tuple[list[int], list[list[int]]]:
    vs = list(g.vertices())
    index = {v: i for i, v in enumerate(vs)}
    return vs, [[index[w] for w in g.neighbors(v)] for v in vs]


def star_colorable(g: Graph, k: int) -> bool:
    """Whether ``g`` has a star coloring with at most ``k`` colors."""
    if k < 1:
        raise ColoringError("need at least one color")
    vs, nbrs = _indexed(g)
    if not vs:
        return True
    return _Search(nbrs, k).run(_search_order(nbrs))


def _lex_first(g: Graph, k: int) -> Coloring | None:
    vs, nbrs = _indexed(g)
    s = _Search(nbrs, k)
    if not s.run(list(range(len(vs)))):
        return None
    return Coloring({v: s.color[i] for i, v in enumerate(vs)}, k)


def exact_star_chromatic(g: Graph, max_colors: int) -> int | None:
    """Smallest ``k <= max_colors`` admitting a star ``k``-coloring, else None."""
    result = optimal_star_coloring(g, max_colors)
    return None if result is None else result.palette_size


def optimal_star_coloring(g: Graph, max_colors: int) -> Coloring | None:
    """Lexicographically first optimal star coloring (colors ``0..k-1``).

    ``None`` means more than ``max_colors`` colors are needed.
    """
    if max_colors < 1:
        raise ColoringError("max_colors must be at least 1")
    if g.order() == 0:
        return Coloring({}, 1)
    for k in range(1, max_colors + 1):
        if not star_colorable(g, k):
            continue
        coloring = _lex_first(g, k)
        assert coloring is not None
        if not verify_star(g, coloring).ok:
            raise AssertionError("solver produced an invalid star coloring")
        return coloring
    return None


def star_chromatic_capped(g: Graph, cap: int) -> int:
    """``min(chi_s(g), cap + 1)``; cheaper than :func:`exact_star_chromatic` for screening."""
    for k in range(1, cap + 1):
        if star_colorable(g, k):
            return k
    return cap + 1
