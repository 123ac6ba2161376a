"""Detectors for the reducible configurations of the three structural lemmas.

Vertex-type names such as ``3_{0,1,2}`` are read as lower bounds: a vertex is a
``k_{i1..ik}``-vertex when it has degree ``k`` and its sorted thread lengths
dominate ``(i1..ik)`` componentwise.  That reading is what makes the
configuration lists unavoidable (a 3-thread's middle vertex is a
``2_{1,1}``-vertex, a 2-cycle component consists of ``2_{1,1}``-vertices, and
so on).

Each detector returns the first match in the family's numbering order,
scanning vertices by increasing id.  ``iter_matches`` yields every match in
the same order so that callers can fall back to later ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterator

from .density import mad_below
from .graph import Graph, dominates, enumerate_threads, girth, walk_thread

FAMILIES = ("L2", "L3", "L5")

KIND_NAMES = {
    "L2": {
        1: "<=1-vertex",
        2: "2_{1,1}-vertex (claim 1)",
        3: "3_{1,1,2}-vertex (claim 2)",
        4: "4_{2,2,2,2}-vertex (claim 3)",
        5: "3_{0,1,2}-vertex adjacent to a bad 3-vertex (claim 4)",
        6: "J-cycle through a vertex of J-degree 3 (claim 5)",
    },
    "L3": {
        1: "<=1-vertex",
        2: "2_{1,1}-vertex",
        3: "3_{1,1,1}-vertex",
        4: "3_{0,0,2}-vertex",
        5: "3_{0,1,1}-vertex adjacent to a 3_{0,1,1}-vertex",
        6: "3_{0,0,1}-vertex adjacent to two 3_{0,1,1}-vertices",
        7: "4_{1,1,1,2}-vertex",
        8: "4_{0,2,2,2}-vertex adjacent to a 3-vertex",
        9: "4_{0,1,1,1}-vertex adjacent to a 3_{0,1,1}-vertex",
        10: "4_{0,1,1,1}-vertex adjacent to a 4_{0,2,2,2}-vertex",
        11: "4_{0,0,2,2}-vertex adjacent to two 4_{0,2,2,2}-vertices",
        12: "4_{0,0,2,2}-vertex adjacent to a 4_{0,2,2,2}- and a 3_{0,1,1}-vertex",
        13: "5_{1,2,2,2,2}-vertex",
        14: "5_{0,2,2,2,2}-vertex adjacent to a 4_{0,2,2,2}-vertex",
    },
    "L5": {
        1: "<=1-vertex",
        2: "2_{0,1}-vertex adjacent to only <=4-vertices",
        3: "3_{0,1,1}-vertex adjacent to only <=3-vertices",
        4: "k_{1,1,2,...,2}-vertex, k>=5",
        5: "k_{0,2,...,2}-vertex adjacent to a 3-vertex, k>=5",
        6: "k_{0,1,2,...,2}-vertex adjacent to a k'_{0,1,1,2,...,2}-vertex",
        7: "k_{0,0,2,...,2}-vertex adjacent to two 3_{0,1,1}-vertices",
        8: "k_{0,0,2,...,2}-vertex adjacent to a k'_{0,1,1,2,...,2}- and a k''_{0,1,2,...,2}-vertex",
    },
}


@dataclass(frozen=True)
class ConfigurationMatch:
    family: str
    kind: int
    roles: tuple[tuple[str, int], ...]
    deletion: frozenset[int]
    params: tuple[tuple[str, int], ...] = ()

    @property
    def name(self) -> str:
        return KIND_NAMES[self.family][self.kind]

    @property
    def role(self) -> dict[str, int]:
        return dict(self.roles)

    def record(self) -> dict:
        return {
            "family": self.family,
            "kind": self.kind,
            "name": self.name,
            "roles": dict(self.roles),
            "params": dict(self.params),
            "deletion": sorted(self.deletion),
        }


def _pattern(k: int, *head: int, fill: int = 2) -> tuple[int, ...]:
    return tuple(head) + (fill,) * (k - len(head))


class Context:
    """Per-graph cache of degrees, thread walks, profiles and the J-subgraph."""

    def __init__(self, g: Graph):
        self.g = g
        self.deg = {v: g.degree(v) for v in g.vertices()}
        self._walks: dict[int, list[tuple[int, list[int], int]]] = {}

    def walks(self, v: int) -> list[tuple[int, list[int], int]]:
        """``(neighbor, internals, end)`` per incident thread, shortest first."""
        w = self._walks.get(v)
        if w is None:
            w = []
            for nb in self.g.neighbors(v):
                internals, end = walk_thread(self.g, v, nb)
                w.append((nb, internals, end))
            w.sort(key=lambda t: (len(t[1]), t[0]))
            self._walks[v] = w
        return w

    def sig(self, v: int) -> tuple[int, ...]:
        return tuple(len(t[1]) for t in self.walks(v))

    def is_type(self, v: int, k: int, pattern: tuple[int, ...]) -> bool:
        return self.deg[v] == k and dominates(self.sig(v), pattern)

    def two_nbrs(self, v: int) -> list[int]:
        return [w for w in self.g.neighbors(v) if self.deg[w] == 2]

    def big_nbrs(self, v: int, at_least: int = 3) -> list[int]:
        return [w for w in self.g.neighbors(v) if self.deg[w] >= at_least]

    def other(self, v: int, prev: int) -> int | None:
        """The neighbor of 2-vertex ``v`` other than ``prev``."""
        for w in self.g.neighbors(v):
            if w != prev:
                return w
        return None

    # lemma-2 notions ---------------------------------------------------

    def is_bad3(self, v: int) -> bool:
        if self.deg[v] != 3:
            return False
        twos = self.two_nbrs(v)
        return any(self.g.has_edge(a, b) for i, a in enumerate(twos) for b in twos[i + 1:])

    def bad_triangle(self, v: int) -> tuple[int, int] | None:
        twos = self.two_nbrs(v)
        for i, a in enumerate(twos):
            for b in twos[i + 1:]:
                if self.g.has_edge(a, b):
                    return a, b
        return None

    @cached_property
    def A(self) -> frozenset[int]:
        g = self.g
        a = set()
        t012 = set()
        for v in g.vertices():
            if self.is_type(v, 2, (0, 1)) or self.is_type(v, 3, (0, 2, 2)):
                a.add(v)
            if self.is_type(v, 3, (0, 1, 2)):
                t012.add(v)
        for v in t012:
            if any(w in t012 for w in g.neighbors(v)):
                a.add(v)
        return frozenset(a)

    @cached_property
    def J(self) -> dict[int, tuple[int, ...]]:
        a = self.A
        return {v: tuple(w for w in self.g.neighbors(v) if w in a) for v in sorted(a)}


@dataclass(frozen=True)
class JSubgraph:
    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]
    degree: dict[int, int] = field(hash=False, compare=False)

    def components(self) -> list[list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen: set[int] = set()
        out = []
        for s in sorted(self.vertices):
            if s in seen:
                continue
            comp, queue = [], deque([s])
            seen.add(s)
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            out.append(sorted(comp))
        return out

    def component_shapes(self) -> list[str]:
        shapes = []
        for comp in self.components():
            cs = set(comp)
            m = sum(1 for a, b in self.edges if a in cs)
            if m == len(comp) - 1:
                shapes.append("tree")
            elif m == len(comp) and all(self.degree[v] == 2 for v in comp):
                shapes.append("cycle")
            else:
                shapes.append("other")
        return shapes

    def leaves(self) -> int:
        return sum(1 for v in self.vertices if self.degree[v] == 1)

    def threes(self) -> int:
        return sum(1 for v in self.vertices if self.degree[v] == 3)


def build_J(g: Graph) -> JSubgraph:
    ctx = Context(g)
    j = ctx.J
    edges = tuple((a, b) for a, nbrs in j.items() for b in nbrs if a < b)
    return JSubgraph(ctx.A, edges, {v: len(n) for v, n in j.items()})


# ---------------------------------------------------------------------------
# helpers shared by detectors


def _prefix(ctx: Context, center: int, pattern: tuple[int, ...], skip: tuple[int, ...] = ()) -> tuple[set[int], list[int]]:
    """Delete the first ``pattern[i]`` internals of the i-th shortest thread.

    Threads toward vertices in ``skip`` are ignored (they are matched to the
    zero entries of the pattern).  Returns the internals taken and, per
    thread, the next vertex beyond them (the white boundary vertex).
    """
    taken: set[int] = set()
    nexts: list[int] = []
    walks = [t for t in ctx.walks(center) if t[0] not in skip]
    pat = list(pattern[len(pattern) - len(walks):]) if len(walks) < len(pattern) else list(pattern)
    for (nb, internals, end), p in zip(walks, pat):
        path = internals + [end]
        take = min(p, len(internals))
        taken.update(path[:take])
        nexts.append(path[take])
    return taken, nexts


def _second_neighbors(g: Graph, v: int) -> list[int]:
    first = set(g.neighbors(v))
    out = set()
    for w in first:
        out.update(x for x in g.neighbors(w) if x != v)
    return sorted(out)


def _match(family: str, kind: int, roles: dict[str, int | None], deletion, **params: int) -> ConfigurationMatch:
    clean = tuple((k, v) for k, v in roles.items() if v is not None)
    return ConfigurationMatch(family, kind, clean, frozenset(deletion), tuple(params.items()))


def _le1(ctx: Context, family: str) -> Iterator[ConfigurationMatch]:
    for v in ctx.g.vertices():
        if ctx.deg[v] <= 1:
            yield _match(family, 1, {"v": v}, {v})


def _two11(ctx: Context, family: str, kind: int, names: tuple[str, str, str, str, str]) -> Iterator[ConfigurationMatch]:
    """A 2-vertex whose neighbors both have degree 2."""
    c, a, b, sa, sb = names
    for x in ctx.g.vertices():
        if ctx.deg[x] == 2 and ctx.is_type(x, 2, (1, 1)):
            n1, n2 = ctx.g.neighbors(x)
            s1, s2 = ctx.other(n1, x), ctx.other(n2, x)
            roles = {c: x, a: n1, b: n2, sa: s1 if s1 not in (x, n2) else None, sb: s2 if s2 not in (x, n1) else None}
            yield _match(family, kind, roles, {x, n1, n2})


# ---------------------------------------------------------------------------
# Lemma 2 (Mad < 26/11): claims 1-5


def _l2_claim2(ctx: Context) -> Iterator[ConfigurationMatch]:
    g = ctx.g
    for x in g.vertices():
        if not ctx.is_type(x, 3, (1, 1, 2)):
            continue
        walks = ctx.walks(x)
        y = walks[-1][0]  # first internal of a longest thread: a 2_{0,1} neighbor
        a, b = sorted(w for w in g.neighbors(x) if w != y)
        y2 = ctx.other(y, x)
        deletion = {x, y, a, b, y2}
        yield _match("L2", 3, {"x": x, "y": y, "a": a, "b": b, "y2": y2}, deletion)


def _l2_claim3(ctx: Context) -> Iterator[ConfigurationMatch]:
    g = ctx.g
    for x in g.vertices():
        if ctx.is_type(x, 4, (2, 2, 2, 2)):
            deletion = {x, *g.neighbors(x), *_second_neighbors(g, x)}
            yield _match("L2", 4, {"x": x}, deletion)


def _l2_claim4(ctx: Context) -> Iterator[ConfigurationMatch]:
    g = ctx.g
    for u in g.vertices():
        if not ctx.is_type(u, 3, (0, 1, 2)):
            continue
        for v in g.neighbors(u):
            if ctx.is_bad3(v):
                tri = ctx.bad_triangle(v)
                if tri is None or u in tri:
                    continue
                w, x = tri
                yield _match("L2", 5, {"u": u, "v": v, "w": w, "x": x}, {v, w, x})


def j_cycles_through_degree3(ctx: Context) -> list[tuple[int, ...]]:
    """Shortest J-cycles through each J-vertex of J-degree 3, shortest first."""
    j = ctx.J
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for r, rn in j.items():
        if len(rn) != 3:
            continue
        dist = {r: 0}
        parent = {r: -1}
        branch = {r: -1}
        queue = deque()
        for b in rn:
            dist[b], parent[b], branch[b] = 1, r, b
            queue.append(b)
        best = None
        while queue:
            a = queue.popleft()
            if best is not None and 2 * dist[a] + 1 > best[0]:
                break
            for b in j[a]:
                if b == r:
                    continue
                if b not in dist:
                    dist[b], parent[b], branch[b] = dist[a] + 1, a, branch[a]
                    queue.append(b)
                elif branch[b] != branch[a]:
                    length = dist[a] + dist[b] + 1
                    if best is None or length < best[0]:
                        best = (length, a, b)
        if best is None:
            continue
        _, a, b = best
        pa, pb = [], []
        while a != -1:
            pa.append(a)
            a = parent[a]
        while b != -1:
            pb.append(b)
            b = parent[b]
        cycle = pa[::-1] + pb[:-1]  # r ... a b ... (excluding r twice)
        key = tuple(sorted(cycle))
        found.setdefault(key, tuple(cycle))
    return sorted(found.values(), key=lambda c: (len(c), sorted(c)))


def _l2_claim5(ctx: Context) -> Iterator[ConfigurationMatch]:
    for cycle in j_cycles_through_degree3(ctx):
        r = next(v for v in cycle if len(ctx.J[v]) == 3)
        roles = {"r": r}
        roles.update({f"c{i}": v for i, v in enumerate(cycle)})
        yield _match("L2", 6, roles, set(cycle), length=len(cycle))


def _iter_L2(ctx: Context) -> Iterator[ConfigurationMatch]:
    yield from _le1(ctx, "L2")
    yield from _two11(ctx, "L2", 2, ("x", "y1", "y2", "z1", "z2"))
    yield from _l2_claim2(ctx)
    yield from _l2_claim3(ctx)
    yield from _l2_claim4(ctx)
    yield from _l2_claim5(ctx)


# ---------------------------------------------------------------------------
# Lemma 3 (Mad < 18/7, girth >= 6): 14 configurations


def _is3011(ctx: Context, v: int) -> bool:
    return ctx.is_type(v, 3, (0, 1, 1))


def _is4_0222(ctx: Context, v: int) -> bool:
    return ctx.is_type(v, 4, (0, 2, 2, 2))


def _l3(ctx: Context) -> Iterator[ConfigurationMatch]:
    g = ctx.g
    vs = g.vertices()
    yield from _le1(ctx, "L3")
    yield from _two11(ctx, "L3", 2, ("w", "v", "x", "u", "y"))
    # 3: 3_{1,1,1}
    for w in vs:
        if ctx.is_type(w, 3, (1, 1, 1)):
            v, x, z = g.neighbors(w)
            u, y, t = ctx.other(v, w), ctx.other(x, w), ctx.other(z, w)
            yield _match("L3", 3, {"w": w, "v": v, "x": x, "z": z, "u": u, "y": y, "t": t}, {w, v, x, z})
    # 4: 3_{0,0,2}
    for u in vs:
        if ctx.is_type(u, 3, (0, 0, 2)):
            nb, internals, end = ctx.walks(u)[-1]
            v, w = internals[0], internals[1]
            x = ctx.other(w, v)
            y, z = sorted(a for a in g.neighbors(u) if a != v)
            yield _match("L3", 4, {"u": u, "v": v, "w": w, "x": x, "y": y, "z": z}, {v, w})
    # 5: 3_{0,1,1} ~ 3_{0,1,1}
    for w in vs:
        if not _is3011(ctx, w):
            continue
        for r in g.neighbors(w):
            if r > w and _is3011(ctx, r):
                v, x = sorted(a for a in ctx.two_nbrs(w) if a != r)[:2]
                q, s = sorted(a for a in ctx.two_nbrs(r) if a != w)[:2]
                roles = {"w": w, "r": r, "v": v, "x": x, "q": q, "s": s,
                         "u": ctx.other(v, w), "y": ctx.other(x, w), "p": ctx.other(q, r), "t": ctx.other(s, r)}
                yield _match("L3", 5, roles, {w, r, v, x, q, s})
    # 6: 3_{0,0,1} adjacent to two 3_{0,1,1}
    for c in vs:
        if not ctx.is_type(c, 3, (0, 0, 1)):
            continue
        partners = [a for a in g.neighbors(c) if _is3011(ctx, a)]
        if len(partners) >= 2:
            a, b = partners[:2]
            d = next(w for w in g.neighbors(c) if w not in (a, b))
            deletion = {c, d, a, b, *ctx.two_nbrs(a), *ctx.two_nbrs(b)}
            yield _match("L3", 6, {"c": c, "d": d, "a": a, "b": b}, deletion)
    # 7: 4_{1,1,1,2}
    for v in vs:
        if ctx.is_type(v, 4, (1, 1, 1, 2)):
            taken, nexts = _prefix(ctx, v, (1, 1, 1, 2))
            roles = {"v": v}
            roles.update({f"y{i + 1}": y for i, y in enumerate(nexts)})
            yield _match("L3", 7, roles, {v} | taken)
    # 8: 4_{0,2,2,2} adjacent to a 3-vertex
    for w in vs:
        if not _is4_0222(ctx, w):
            continue
        for x in g.neighbors(w):
            if ctx.deg[x] == 3:
                taken, nexts = _prefix(ctx, w, (2, 2, 2), skip=(x,))
                roles = {"w": w, "x": x}
                roles.update({f"y{i + 1}": y for i, y in enumerate(nexts)})
                yield _match("L3", 8, roles, {w} | taken)
                break
    # 9: 4_{0,1,1,1} ~ 3_{0,1,1}
    for v in vs:
        if not ctx.is_type(v, 4, (0, 1, 1, 1)):
            continue
        for u in g.neighbors(v):
            if _is3011(ctx, u):
                deletion = {v, u, *ctx.two_nbrs(v), *ctx.two_nbrs(u)}
                yield _match("L3", 9, {"v": v, "u": u}, deletion)
                break
    # 10: 4_{0,1,1,1} ~ 4_{0,2,2,2}
    for v in vs:
        if not ctx.is_type(v, 4, (0, 1, 1, 1)):
            continue
        for u in g.neighbors(v):
            if _is4_0222(ctx, u):
                tv, yv = _prefix(ctx, v, (1, 1, 1), skip=(u,))
                tu, _ = _prefix(ctx, u, (2, 2, 2), skip=(v,))
                roles = {"u": u, "v": v, "y4": yv[0], "y5": yv[1], "y6": yv[2]}
                yield _match("L3", 10, roles, {u, v} | tv | tu)
                break
    # 11, 12: 4_{0,0,2,2} centers
    for z in vs:
        if not ctx.is_type(z, 4, (0, 0, 2, 2)):
            continue
        big = [a for a in g.neighbors(z) if ctx.deg[a] != 2]
        fours = [a for a in big if _is4_0222(ctx, a)]
        if len(fours) >= 2:
            u, v = fours[:2]
            tz, _ = _prefix(ctx, z, (2, 2), skip=(u, v))
            tu, _ = _prefix(ctx, u, (2, 2, 2), skip=(z,))
            tv, _ = _prefix(ctx, v, (2, 2, 2), skip=(z,))
            yield _match("L3", 11, {"z": z, "u": u, "v": v}, {z, u, v} | tz | tu | tv)
    for z in vs:
        if not ctx.is_type(z, 4, (0, 0, 2, 2)):
            continue
        big = [a for a in g.neighbors(z) if ctx.deg[a] != 2]
        fours = [a for a in big if _is4_0222(ctx, a)]
        threes = [a for a in big if _is3011(ctx, a)]
        if fours and threes:
            u, v = fours[0], threes[0]
            tz, _ = _prefix(ctx, z, (2, 2), skip=(u, v))
            tu, _ = _prefix(ctx, u, (2, 2, 2), skip=(z,))
            tv, qs = _prefix(ctx, v, (1, 1), skip=(z,))
            yield _match("L3", 12, {"z": z, "u": u, "v": v, "q1": qs[0], "q2": qs[1]}, {z, u, v} | tz | tu | tv)
    # 13: 5_{1,2,2,2,2}
    for u in vs:
        if ctx.is_type(u, 5, (1, 2, 2, 2, 2)):
            taken, nexts = _prefix(ctx, u, (1, 2, 2, 2, 2))
            yield _match("L3", 13, {"u": u, "y5": nexts[0]}, {u} | taken)
    # 14: 5_{0,2,2,2,2} ~ 4_{0,2,2,2}
    for u in vs:
        if not ctx.is_type(u, 5, (0, 2, 2, 2, 2)):
            continue
        for v in g.neighbors(u):
            if _is4_0222(ctx, v):
                tu, _ = _prefix(ctx, u, (2, 2, 2, 2), skip=(v,))
                tv, _ = _prefix(ctx, v, (2, 2, 2), skip=(u,))
                yield _match("L3", 14, {"u": u, "v": v}, {u, v} | tu | tv)
                break


# ---------------------------------------------------------------------------
# Lemma 5 (Mad < 8/3, girth >= 6): 8 configurations


def _l5(ctx: Context) -> Iterator[ConfigurationMatch]:
    g = ctx.g
    vs = g.vertices()
    deg = ctx.deg
    yield from _le1(ctx, "L5")
    # 2: 2_{0,1} adjacent to only <=4-vertices
    for w in vs:
        if deg[w] == 2 and ctx.is_type(w, 2, (0, 1)) and all(deg[a] <= 4 for a in g.neighbors(w)):
            v = next(a for a in g.neighbors(w) if deg[a] == 2)
            x = next(a for a in g.neighbors(w) if a != v)
            u = ctx.other(v, w)
            roles = {"w": w, "v": v, "x": x, "u": u}
            ys = [a for a in g.neighbors(x) if a != w]
            roles.update({f"y{i + 1}": y for i, y in enumerate(ys)})
            yield _match("L5", 2, roles, {v, w})
    # 3: 3_{0,1,1} adjacent to only <=3-vertices
    for w in vs:
        if ctx.is_type(w, 3, (0, 1, 1)) and all(deg[a] <= 3 for a in g.neighbors(w)):
            walks = ctx.walks(w)
            x = walks[0][0]
            v, z = sorted(t[0] for t in walks[1:])
            roles = {"w": w, "v": v, "z": z, "x": x, "u": ctx.other(v, w), "r": ctx.other(z, w)}
            ys = [a for a in g.neighbors(x) if a != w]
            roles.update({f"y{i + 1}": y for i, y in enumerate(ys)})
            yield _match("L5", 3, roles, {v, w, z})
    # 4: k_{1,1,2,...,2}
    for x in vs:
        k = deg[x]
        if k >= 5 and ctx.is_type(x, k, _pattern(k, 1, 1)):
            taken, nexts = _prefix(ctx, x, _pattern(k, 1, 1))
            yield _match("L5", 4, {"x": x, "v1": nexts[0], "v2": nexts[1]}, {x} | taken, k=k)
    # 5: k_{0,2,...,2} adjacent to a 3-vertex
    for x in vs:
        k = deg[x]
        if k < 5 or not ctx.is_type(x, k, _pattern(k, 0)):
            continue
        for v in g.neighbors(x):
            if deg[v] == 3:
                taken, _ = _prefix(ctx, x, _pattern(k - 1), skip=(v,))
                v1, v2 = (a for a in g.neighbors(v) if a != x)
                yield _match("L5", 5, {"x": x, "v": v, "v1": v1, "v2": v2}, {x} | taken, k=k)
                break
    # 6: k_{0,1,2..2} ~ k'_{0,1,1,2..2}
    for u in vs:
        k = deg[u]
        if k < 5 or not ctx.is_type(u, k, _pattern(k, 0, 1)):
            continue
        for v in g.neighbors(u):
            kk = deg[v]
            if kk >= 5 and ctx.is_type(v, kk, _pattern(kk, 0, 1, 1)):
                tu, nu = _prefix(ctx, u, _pattern(k - 1, 1), skip=(v,))
                tv, nv = _prefix(ctx, v, _pattern(kk - 1, 1, 1), skip=(u,))
                roles = {"u": u, "v": v, "v1": nu[0], "v2": nv[0], "v3": nv[1]}
                yield _match("L5", 6, roles, {u, v} | tu | tv, k=k, k1=kk)
                break
    # 7, 8: k_{0,0,2..2} centers
    for x in vs:
        k = deg[x]
        if k < 5 or not ctx.is_type(x, k, _pattern(k, 0, 0)):
            continue
        big = [a for a in g.neighbors(x) if deg[a] != 2]
        threes = [a for a in big if _is3011(ctx, a)]
        if len(threes) >= 2:
            r, s = threes[:2]
            tx, _ = _prefix(ctx, x, _pattern(k - 2), skip=(r, s))
            tr, nr = _prefix(ctx, r, (1, 1), skip=(x,))
            ts, ns = _prefix(ctx, s, (1, 1), skip=(x,))
            roles = {"x": x, "r": r, "s": s, "u1": nr[0], "u2": nr[1], "w1": ns[0], "w2": ns[1]}
            yield _match("L5", 7, roles, {x, r, s} | tx | tr | ts, k=k)
    for x in vs:
        k = deg[x]
        if k < 5 or not ctx.is_type(x, k, _pattern(k, 0, 0)):
            continue
        big = [a for a in g.neighbors(x) if deg[a] != 2]
        vees = [a for a in big if deg[a] >= 5 and ctx.is_type(a, deg[a], _pattern(deg[a], 0, 1, 1))]
        ues = [a for a in big if deg[a] >= 5 and ctx.is_type(a, deg[a], _pattern(deg[a], 0, 1))]
        pair = next(((v, u) for v in vees for u in ues if u != v), None)
        if pair is None:
            continue
        v, u = pair
        tx, _ = _prefix(ctx, x, _pattern(k - 2), skip=(u, v))
        tv, nv = _prefix(ctx, v, _pattern(deg[v] - 1, 1, 1), skip=(x,))
        tu, nu = _prefix(ctx, u, _pattern(deg[u] - 1, 1), skip=(x,))
        roles = {"x": x, "v": v, "u": u, "v1": nv[0], "v2": nv[1], "v3": nu[0]}
        yield _match("L5", 8, roles, {x, u, v} | tx | tv | tu, k=k, k1=deg[v], k2=deg[u])


_ITERATORS: dict[str, Callable[[Context], Iterator[ConfigurationMatch]]] = {
    "L2": _iter_L2,
    "L3": _l3,
    "L5": _l5,
}


def iter_matches(g: Graph, family: str) -> Iterator[ConfigurationMatch]:
    if family not in _ITERATORS:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return _ITERATORS[family](Context(g))


def detect(g: Graph, family: str) -> ConfigurationMatch | None:
    for m in iter_matches(g, family):
        if not validate_match(g, m):
            raise AssertionError(f"detector produced an invalid match: {m.record()}")
        return m
    return None


def detect_L2(g: Graph) -> ConfigurationMatch | None:
    return detect(g, "L2")


def detect_L3(g: Graph) -> ConfigurationMatch | None:
    return detect(g, "L3")


def detect_L5(g: Graph) -> ConfigurationMatch | None:
    return detect(g, "L5")


# ---------------------------------------------------------------------------
# independent re-validation


def thread_signatures(g: Graph) -> dict[int, tuple[int, ...]]:
    """Sorted thread lengths per vertex, rebuilt from :func:`enumerate_threads`."""
    lengths: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for t in enumerate_threads(g):
        if t.cyclic:
            for v in (t.ends[0], *t.internals):
                lengths[v] = [t.length, t.length]
            continue
        a, b = t.ends
        lengths[a].append(t.length)
        lengths[b].append(t.length)
        # internal vertices see the thread split around themselves
        for i, v in enumerate(t.internals):
            lengths[v] = [i, t.length - 1 - i]
    return {v: tuple(sorted(ls)) for v, ls in lengths.items()}


def validate_match(g: Graph, m: ConfigurationMatch) -> bool:
    """Recheck a match from scratch: role types, adjacencies, deletion set."""
    sig = thread_signatures(g)
    deg = {v: g.degree(v) for v in g.vertices()}
    r = m.role
    alive = set(g.vertices())
    if not m.deletion or not m.deletion <= alive or not set(r.values()) <= alive:
        return False

    def typ(v: int, k: int, pattern: tuple[int, ...]) -> bool:
        return deg[v] == k and dominates(sig[v], pattern)

    def adj(a: str, b: str) -> bool:
        return g.has_edge(r[a], r[b])

    def big(v: int) -> bool:
        return deg[v] >= 5

    def kpat(v: int, *head: int) -> bool:
        return big(v) and typ(v, deg[v], _pattern(deg[v], *head))

    checks: dict[tuple[str, int], Callable[[], bool]] = {
        ("L2", 1): lambda: deg[r["v"]] <= 1,
        ("L2", 2): lambda: typ(r["x"], 2, (1, 1)),
        ("L2", 3): lambda: typ(r["x"], 3, (1, 1, 2)) and adj("x", "y") and deg[r["y"]] == 2 and deg[r["y2"]] == 2,
        ("L2", 4): lambda: typ(r["x"], 4, (2, 2, 2, 2)),
        ("L2", 5): lambda: typ(r["u"], 3, (0, 1, 2)) and adj("u", "v") and deg[r["v"]] == 3
        and deg[r["w"]] == 2 and deg[r["x"]] == 2 and adj("v", "w") and adj("v", "x") and adj("w", "x"),
        ("L2", 6): lambda: _valid_j_cycle(g, m),
        ("L3", 1): lambda: deg[r["v"]] <= 1,
        ("L3", 2): lambda: typ(r["w"], 2, (1, 1)),
        ("L3", 3): lambda: typ(r["w"], 3, (1, 1, 1)),
        ("L3", 4): lambda: typ(r["u"], 3, (0, 0, 2)) and adj("u", "v") and adj("v", "w") and deg[r["v"]] == deg[r["w"]] == 2,
        ("L3", 5): lambda: typ(r["w"], 3, (0, 1, 1)) and typ(r["r"], 3, (0, 1, 1)) and adj("w", "r"),
        ("L3", 6): lambda: typ(r["c"], 3, (0, 0, 1)) and typ(r["a"], 3, (0, 1, 1)) and typ(r["b"], 3, (0, 1, 1))
        and adj("c", "a") and adj("c", "b") and r["a"] != r["b"],
        ("L3", 7): lambda: typ(r["v"], 4, (1, 1, 1, 2)),
        ("L3", 8): lambda: typ(r["w"], 4, (0, 2, 2, 2)) and deg[r["x"]] == 3 and adj("w", "x"),
        ("L3", 9): lambda: typ(r["v"], 4, (0, 1, 1, 1)) and typ(r["u"], 3, (0, 1, 1)) and adj("u", "v"),
        ("L3", 10): lambda: typ(r["v"], 4, (0, 1, 1, 1)) and typ(r["u"], 4, (0, 2, 2, 2)) and adj("u", "v"),
        ("L3", 11): lambda: typ(r["z"], 4, (0, 0, 2, 2)) and typ(r["u"], 4, (0, 2, 2, 2)) and typ(r["v"], 4, (0, 2, 2, 2))
        and adj("z", "u") and adj("z", "v") and r["u"] != r["v"],
        ("L3", 12): lambda: typ(r["z"], 4, (0, 0, 2, 2)) and typ(r["u"], 4, (0, 2, 2, 2)) and typ(r["v"], 3, (0, 1, 1))
        and adj("z", "u") and adj("z", "v"),
        ("L3", 13): lambda: typ(r["u"], 5, (1, 2, 2, 2, 2)),
        ("L3", 14): lambda: typ(r["u"], 5, (0, 2, 2, 2, 2)) and typ(r["v"], 4, (0, 2, 2, 2)) and adj("u", "v"),
        ("L5", 1): lambda: deg[r["v"]] <= 1,
        ("L5", 2): lambda: typ(r["w"], 2, (0, 1)) and all(deg[a] <= 4 for a in g.neighbors(r["w"])) and adj("w", "v") and deg[r["v"]] == 2,
        ("L5", 3): lambda: typ(r["w"], 3, (0, 1, 1)) and all(deg[a] <= 3 for a in g.neighbors(r["w"])),
        ("L5", 4): lambda: kpat(r["x"], 1, 1),
        ("L5", 5): lambda: kpat(r["x"], 0) and deg[r["v"]] == 3 and adj("x", "v"),
        ("L5", 6): lambda: kpat(r["u"], 0, 1) and kpat(r["v"], 0, 1, 1) and adj("u", "v"),
        ("L5", 7): lambda: kpat(r["x"], 0, 0) and typ(r["r"], 3, (0, 1, 1)) and typ(r["s"], 3, (0, 1, 1))
        and adj("x", "r") and adj("x", "s") and r["r"] != r["s"],
        ("L5", 8): lambda: kpat(r["x"], 0, 0) and kpat(r["v"], 0, 1, 1) and kpat(r["u"], 0, 1)
        and adj("x", "u") and adj("x", "v") and r["u"] != r["v"],
    }
    check = checks.get((m.family, m.kind))
    if check is None:
        return False
    try:
        return bool(check())
    except KeyError:
        return False


def _valid_j_cycle(g: Graph, m: ConfigurationMatch) -> bool:
    ctx = Context(g)
    j = ctx.J
    cyc = [v for k, v in m.roles if k.startswith("c")]
    if len(cyc) < 3 or set(cyc) != set(m.deletion) or not set(cyc) <= ctx.A:
        return False
    ring = all(cyc[(i + 1) % len(cyc)] in j[cyc[i]] for i in range(len(cyc)))
    return ring and any(len(j[v]) == 3 for v in cyc)


# ---------------------------------------------------------------------------
# unavoidability as a falsifiable check

HYPOTHESES = {
    "L2": (Fraction(26, 11), 3),
    "L3": (Fraction(18, 7), 6),
    "L5": (Fraction(8, 3), 6),
}


@dataclass(frozen=True)
class UnavoidabilityReport:
    family: str
    in_hypothesis: bool
    passed: bool
    match: ConfigurationMatch | None

    def record(self) -> dict:
        return {"family": self.family, "in_hypothesis": self.in_hypothesis, "passed": self.passed,
                "match": self.match.record() if self.match else None}


def assert_unavoidable(g: Graph, family: str, mad_bound: Fraction | None = None, girth_min: int | None = None) -> UnavoidabilityReport:
    """If ``g`` meets the family's hypotheses, its detector must fire.

    Graphs outside the hypotheses pass vacuously (``in_hypothesis`` False).
    The empty graph passes vacuously too.
    """
    default_bound, default_girth = HYPOTHESES[family]
    bound = default_bound if mad_bound is None else Fraction(mad_bound)
    gmin = default_girth if girth_min is None else girth_min
    if g.order() == 0:
        return UnavoidabilityReport(family, False, True, None)
    inside = mad_below(g, bound) and girth(g) >= gmin
    match = detect(g, family)
    return UnavoidabilityReport(family, inside, (not inside) or match is not None, match)
