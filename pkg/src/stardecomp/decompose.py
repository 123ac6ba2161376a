"""Vertex partitions into a forest plus distance-constrained independent sets.

Each ``decompose_*`` function reduces the graph by repeatedly deleting a
reducible configuration, then rebuilds the partition in reverse.  A
configuration's hand-written placement rule (the "fast path") is tried first;
whatever it proposes is checked by the same incremental constraint engine the
backtracking fallback uses, and a final global check runs after each step.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .config import ConfigurationMatch, detect, iter_matches, validate_match
from .density import mad_below
from .graph import Graph, bfs_distances, components, girth

SCHEMES: dict[str, tuple[str, ...]] = {
    "FI": ("F", "I"),
    "FI1I2": ("F", "I1", "I2"),
    "FI1I2I3": ("F", "I1", "I2", "I3"),
}

FAMILY_OF = {"FI": "L2", "FI1I2": "L3", "FI1I2I3": "L5"}
BOUND_OF = {"FI": Fraction(26, 11), "FI1I2": Fraction(18, 7), "FI1I2I3": Fraction(8, 3)}

DEFAULT_BUDGET = 200_000


class DecomposeError(RuntimeError):
    pass


class PreconditionError(DecomposeError):
    pass


class LemmaFalsified(DecomposeError):
    """The family detector found nothing on a graph meeting the hypotheses."""

    def __init__(self, message: str, graph: Graph):
        super().__init__(message)
        self.graph = graph


class ExtensionNotFound(DecomposeError):
    def __init__(self, message: str, graph: Graph, deleted: Iterable[int]):
        super().__init__(message)
        self.graph = graph
        self.deleted = tuple(sorted(deleted))


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    scheme: str
    classes: Mapping[str, frozenset[int]]

    @classmethod
    def from_assignment(cls, scheme: str, assignment: Mapping[int, str]) -> "Partition":
        names = SCHEMES[scheme]
        buckets: dict[str, set[int]] = {c: set() for c in names}
        for v, c in assignment.items():
            if c not in buckets:
                raise PartitionError(f"class {c!r} not in scheme {scheme}")
            buckets[c].add(v)
        return cls(scheme, {c: frozenset(s) for c, s in buckets.items()})

    def assignment(self) -> dict[int, str]:
        return {v: c for c, vs in self.classes.items() for v in vs}

    def class_of(self, v: int) -> str:
        for c, vs in self.classes.items():
            if v in vs:
                return c
        raise KeyError(v)

    def lines(self) -> list[str]:
        return [" ".join([c, *map(str, sorted(self.classes[c]))]) for c in SCHEMES[self.scheme]]


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str | None = None
    witness: tuple[int, ...] = ()

    def record(self) -> dict:
        return {"status": "ok" if self.ok else "violation", "reason": self.reason, "witness": list(self.witness)}


def _uses_restricted_host(scheme: str, cname: str) -> bool:
    return scheme == "FI1I2" and cname == "I1"


def verify_partition(g: Graph, p: Partition) -> Verdict:
    """Check P1 (forest) and the per-class distance conditions."""
    names = SCHEMES.get(p.scheme)
    if names is None or set(p.classes) != set(names):
        raise PartitionError(f"classes {sorted(p.classes)} do not match scheme {p.scheme}")
    seen: dict[int, str] = {}
    for c in names:
        for v in p.classes[c]:
            if v in seen:
                raise PartitionError(f"vertex {v} in both {seen[v]} and {c}")
            seen[v] = c
    alive = set(g.vertices())
    if set(seen) != alive:
        missing = sorted(alive - set(seen))
        extra = sorted(set(seen) - alive)
        raise PartitionError(f"partition does not cover the graph (missing {missing[:10]}, extra {extra[:10]})")

    cycle = _forest_violation(g, p.classes["F"])
    if cycle is not None:
        return Verdict(False, "F contains a cycle", cycle)
    for c in names[1:]:
        members = p.classes[c]
        restricted = _uses_restricted_host(p.scheme, c)
        host_ok = (p.classes["F"] | members) if restricted else None
        for x in sorted(members):
            for y in g.neighbors(x):
                if y in members:
                    return Verdict(False, f"{c} not independent", (min(x, y), max(x, y)))
        for y in g.vertices():
            if host_ok is not None and y not in host_ok:
                continue
            hits = [x for x in g.neighbors(y) if x in members]
            if len(hits) >= 2:
                where = "G[F+I1]" if restricted else "G"
                return Verdict(False, f"{c} vertices at distance 2 in {where}", (hits[0], y, hits[1]))
    return Verdict(True)


def _forest_violation(g: Graph, forest: frozenset[int]) -> tuple[int, ...] | None:
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for u, v in g.edges():
        if u in forest and v in forest:
            ru, rv = find(u), find(v)
            if ru == rv:
                # report the cycle: the edge uv plus a shortest u-v path avoiding it
                h = _without_edge(g.induced(forest), u, v)
                dist = bfs_distances(h, u)
                path = [v]
                while path[-1] != u:
                    x = path[-1]
                    path.append(next(w for w in h.neighbors(x) if dist.get(w, -1) == dist[x] - 1))
                return tuple(path)
            parent[ru] = rv
    return None


def _without_edge(g: Graph, u: int, v: int) -> Graph:
    adj = [tuple(w for w in g.neighbors(x) if (x, w) not in ((u, v), (v, u))) for x in range(g.n)]
    return Graph(g.n, adj, g.vertices())


# ---------------------------------------------------------------------------
# incremental constraint engine


class _Engine:
    """Assign classes to free vertices against a fixed, valid remainder.

    Classes are small ints, 0 being F.  Every check involves only the vertex
    being assigned and vertices already assigned, so a complete assignment
    that passed every check satisfies the scheme's conditions.
    """

    def __init__(self, g: Graph, scheme: str, fixed: Mapping[int, int]):
        self.g = g
        self.k = len(SCHEMES[scheme])
        self.restricted_i1 = scheme == "FI1I2"
        self.cls: dict[int, int] = dict(fixed)
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}
        self.history: list[tuple[int, int] | None] = []
        for u, v in g.edges():
            if fixed.get(u) == 0 and fixed.get(v) == 0:
                if not self._union(u, v):
                    raise PartitionError("fixed part has a cycle in F")
        self.history.clear()

    def _find(self, x: int) -> int:
        p = self.parent
        while x in p:
            x = p[x]
        return x

    def _union(self, a: int, b: int) -> bool:
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return False
        if self.size.get(ra, 1) < self.size.get(rb, 1):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] = self.size.get(ra, 1) + self.size.get(rb, 1)
        self.history.append((ra, rb))
        return True

    def feasible(self, v: int, c: int) -> bool:
        g, cls = self.g, self.cls
        if c == 0:
            roots = set()
            i1 = 0
            for w in g.neighbors(v):
                cw = cls.get(w)
                if cw == 0:
                    r = self._find(w)
                    if r in roots:
                        return False
                    roots.add(r)
                elif cw == 1 and self.restricted_i1:
                    i1 += 1
            return i1 <= 1
        for w in g.neighbors(v):
            if cls.get(w) == c:
                return False
        if c == 1 and self.restricted_i1:
            for y in g.neighbors(v):
                if cls.get(y) == 0:
                    for z in g.neighbors(y):
                        if z != v and cls.get(z) == 1:
                            return False
            return True
        for y in g.neighbors(v):
            for z in g.neighbors(y):
                if z != v and cls.get(z) == c:
                    return False
        return True

    def assign(self, v: int, c: int) -> None:
        self.history.append(None)  # marker
        self.cls[v] = c
        if c == 0:
            for w in self.g.neighbors(v):
                if self.cls.get(w) == 0:
                    self._union(v, w)

    def unassign(self, v: int) -> None:
        del self.cls[v]
        while True:
            h = self.history.pop()
            if h is None:
                break
            ra, rb = h
            del self.parent[rb]
            self.size[ra] -= self.size.get(rb, 1)

    def search(self, order: list[int], prefer: Mapping[int, int] | None = None,
               only: bool = False, budget: int = DEFAULT_BUDGET) -> dict[int, int] | None:
        """Depth-first search with forward checking; ``None`` when exhausted."""
        n = len(order)
        pending = set(order)
        nodes = 0
        near: dict[int, list[int]] = {}
        for v in order:
            ball = bfs_distances(self.g, v, 2)
            near[v] = [u for u in ball if u != v and u in pending]

        def values(v: int) -> list[int]:
            if prefer and v in prefer:
                if only:
                    return [prefer[v]]
                return [prefer[v]] + [c for c in range(self.k) if c != prefer[v]]
            return list(range(self.k))

        def rec(i: int) -> bool:
            nonlocal nodes
            if i == n:
                return True
            v = order[i]
            for c in values(v):
                nodes += 1
                if nodes > budget:
                    raise _BudgetExceeded
                if not self.feasible(v, c):
                    continue
                self.assign(v, c)
                pending.discard(v)
                if all(any(self.feasible(u, d) for d in range(self.k)) for u in near[v] if u in pending):
                    if rec(i + 1):
                        return True
                pending.add(v)
                self.unassign(v)
            return False

        try:
            ok = rec(0)
        except _BudgetExceeded:
            return None
        return {v: self.cls[v] for v in order} if ok else None


class _BudgetExceeded(Exception):
    pass


def _bfs_order(g: Graph, free: set[int]) -> list[int]:
    out: list[int] = []
    seen: set[int] = set()
    for s in sorted(free):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            x = queue.pop(0)
            out.append(x)
            for y in g.neighbors(x):
                if y in free and y not in seen:
                    seen.add(y)
                    queue.append(y)
    return out


def extend_by_search(g: Graph, partial: Partition, deleted: Iterable[int], scheme: str,
                     budget: int = DEFAULT_BUDGET) -> Partition:
    """Place ``deleted`` so that the whole partition is valid on ``g``.

    ``partial`` must cover exactly the alive vertices of ``g`` outside
    ``deleted`` and be valid there.  Candidates are explored with F first,
    then I1, I2, I3, in breadth-first order from the smallest deleted id.
    """
    names = SCHEMES[scheme]
    index = {c: i for i, c in enumerate(names)}
    free = set(deleted)
    fixed = {v: index[c] for v, c in partial.assignment().items() if v not in free}
    got = _Engine(g, scheme, fixed).search(_bfs_order(g, free), budget=budget)
    if got is None:
        raise ExtensionNotFound(f"no extension over {len(free)} vertices", g, free)
    full = {v: names[c] for v, c in fixed.items()}
    full.update({v: names[c] for v, c in got.items()})
    return Partition.from_assignment(scheme, full)


# ---------------------------------------------------------------------------
# fast paths (placement rules of the reduction proofs)

FastPath = Callable[["_Ctx"], "dict[int, str] | None"]


@dataclass
class _Ctx:
    g: Graph
    roles: dict[str, int]
    cls: Mapping[int, str]
    names: tuple[str, ...]

    def c(self, role: str) -> str | None:
        v = self.roles.get(role)
        return None if v is None else self.cls.get(v)

    def indep(self, role: str) -> bool:
        c = self.c(role)
        return c is not None and c != "F"

    def is_f(self, role: str) -> bool:
        return self.c(role) == "F"

    def avoid(self, roles: Iterable[str], extra: Iterable[str] = ()) -> str | None:
        """First independent class used by none of the given role vertices."""
        taken = {self.c(r) for r in roles} | set(extra)
        return next((c for c in self.names[1:] if c not in taken), None)

    def other(self, v: int, prev: int) -> int | None:
        return next((w for w in self.g.neighbors(v) if w != prev), None)


def _fp_F(ctx: _Ctx) -> dict[int, str]:
    return {}


def _l2_claim1(ctx: _Ctx) -> dict[int, str]:
    second = [r for r in ("z1", "z2") if r in ctx.roles]
    if any(ctx.indep(r) for r in second):
        return {}
    return {ctx.roles["x"]: "I"}


def _l2_claim2(ctx: _Ctx) -> dict[int, str] | None:
    r, g = ctx.roles, ctx.g
    x, y, a, b, y2 = r["x"], r["y"], r["a"], r["b"], r["y2"]
    if y2 in (a, b):
        return {y: "I"}
    sa, sb, sy = ctx.other(a, x), ctx.other(b, x), ctx.other(y2, y)
    ca, cb, cy = ctx.cls.get(sa), ctx.cls.get(sb), ctx.cls.get(sy)
    if None in (ca, cb, cy):
        return None
    if ca == "I" and cb == "I":
        return {}
    if ca == "F" and cb == "F":
        return {x: "I"}
    if cy == "I":
        return {}
    return {y: "I"}


def _l2_claim3(ctx: _Ctx) -> dict[int, str]:
    return {ctx.roles["x"]: "I"}


def _l2_claim4(ctx: _Ctx) -> dict[int, str] | None:
    if ctx.c("u") == "I":
        return None
    return {ctx.roles["x"]: "I"}


def _l3_2(ctx: _Ctx) -> dict[int, str]:
    if ctx.is_f("u") and ctx.is_f("y"):
        return {ctx.roles["w"]: "I1"}
    return {}


def _l3_3(ctx: _Ctx) -> dict[int, str]:
    ends = ("u", "y", "t")
    in_f = [e for e in ends if ctx.is_f(e)]
    w = ctx.roles["w"]
    if len(in_f) == 3:
        return {w: "I1"}
    if len(in_f) == 2:
        odd = next(e for e in ends if e not in in_f)
        return {w: "I2" if ctx.c(odd) == "I1" else "I1"}
    return {}


def _l3_4(ctx: _Ctx) -> dict[int, str]:
    if not (ctx.is_f("u") and ctx.is_f("x")):
        return {}
    cy, cz = ctx.c("y"), ctx.c("z")
    if cy != "F" and cz != "F":
        return {}
    w = ctx.roles["w"]
    if cy in ("I2", "F") and cz in ("I2", "F"):
        return {w: "I1"}
    if cy in ("I1", "F") and cz in ("I1", "F"):
        return {w: "I2"}
    return {}


def _l3_5(ctx: _Ctx) -> dict[int, str] | None:
    r = ctx.roles
    arms_w, arms_r = ("u", "y"), ("p", "t")
    not_f = [e for e in arms_w + arms_r if not ctx.is_f(e)]
    if not not_f:
        return {r["w"]: "I1", r["r"]: "I2"}
    if len(not_f) == 1:
        return {r["w"]: "I1"} if not_f[0] in arms_r else {r["r"]: "I1"}
    return None


def _l3_8(ctx: _Ctx) -> dict[int, str]:
    w = ctx.roles["w"]
    return {w: "I2"} if ctx.c("x") == "I1" else {w: "I1"}


def _l3_10(ctx: _Ctx) -> dict[int, str]:
    r = ctx.roles
    ys = ("y4", "y5", "y6")
    used = [ctx.c(y) for y in ys if ctx.indep(y)]
    if len(used) >= 2:
        return {r["u"]: "I1"}
    first = used[0] if used else "I1"
    second = "I2" if first == "I1" else "I1"
    return {r["u"]: first, r["v"]: second}


def _l3_11(ctx: _Ctx) -> dict[int, str]:
    r = ctx.roles
    return {r["u"]: "I1", r["v"]: "I1", r["z"]: "I2"}


def _l3_13(ctx: _Ctx) -> dict[int, str]:
    return {ctx.roles["u"]: "I2" if ctx.c("y5") == "I1" else "I1"}


def _l3_14(ctx: _Ctx) -> dict[int, str]:
    r = ctx.roles
    return {r["u"]: "I1", r["v"]: "I2"}


def _l5_2(ctx: _Ctx) -> dict[int, str]:
    if ctx.indep("u") or ctx.indep("x"):
        return {}
    ys = [k for k in ctx.roles if k.startswith("y")]
    c = ctx.avoid(ys)
    return {} if c is None else {ctx.roles["w"]: c}


def _l5_3(ctx: _Ctx) -> dict[int, str]:
    near = ("u", "r", "y1", "y2")
    if sum(ctx.indep(k) for k in near if k in ctx.roles) >= 3:
        return {}
    present = [k for k in near if k in ctx.roles]
    c = ctx.avoid(present + ["x"]) or ctx.avoid(present)
    if c is None:
        return {}
    out = {ctx.roles["w"]: c}
    if ctx.c("x") == c:
        out[ctx.roles["x"]] = "F"
    return out


def _l5_4(ctx: _Ctx) -> dict[int, str] | None:
    c = ctx.avoid(("v1", "v2"))
    return None if c is None else {ctx.roles["x"]: c}


def _l5_5(ctx: _Ctx) -> dict[int, str] | None:
    c = ctx.avoid(("v1", "v2", "v")) or ctx.avoid(("v1", "v2"))
    if c is None:
        return None
    out = {ctx.roles["x"]: c}
    if ctx.c("v") == c:
        out[ctx.roles["v"]] = "F"
    return out


def _l5_6(ctx: _Ctx) -> dict[int, str] | None:
    cv = ctx.avoid(("v2", "v3"))
    if cv is None:
        return None
    cu = ctx.avoid(("v1",), extra=(cv,))
    out = {ctx.roles["v"]: cv}
    if cu is not None:
        out[ctx.roles["u"]] = cu
    return out


def _l5_7(ctx: _Ctx) -> dict[int, str] | None:
    r = ctx.roles
    cr = ctx.avoid(("u1", "u2"))
    if cr is None:
        return None
    cs = ctx.avoid(("w1", "w2"), extra=(cr,))
    out = {r["r"]: cr}
    if cs is not None:
        out[r["s"]] = cs
    cx = next((c for c in ctx.names[1:] if c not in (cr, cs)), None)
    if cx is not None:
        out[r["x"]] = cx
    return out


def _l5_8(ctx: _Ctx) -> dict[int, str] | None:
    r = ctx.roles
    cv = ctx.avoid(("v1", "v2"))
    if cv is None:
        return None
    cu = ctx.avoid(("v3",), extra=(cv,))
    if cu is None:
        return None
    cx = next((c for c in ctx.names[1:] if c not in (cu, cv)), None)
    out = {r["v"]: cv, r["u"]: cu}
    if cx is not None:
        out[r["x"]] = cx
    return out


FAST_PATHS: dict[tuple[str, int], FastPath] = {
    ("L2", 1): _fp_F,
    ("L2", 2): _l2_claim1,
    ("L2", 3): _l2_claim2,
    ("L2", 4): _l2_claim3,
    ("L2", 5): _l2_claim4,
    ("L3", 1): _fp_F,
    ("L3", 2): _l3_2,
    ("L3", 3): _l3_3,
    ("L3", 4): _l3_4,
    ("L3", 5): _l3_5,
    ("L3", 8): _l3_8,
    ("L3", 10): _l3_10,
    ("L3", 11): _l3_11,
    ("L3", 12): _l3_11,
    ("L3", 13): _l3_13,
    ("L3", 14): _l3_14,
    ("L5", 1): _fp_F,
    ("L5", 2): _l5_2,
    ("L5", 3): _l5_3,
    ("L5", 4): _l5_4,
    ("L5", 5): _l5_5,
    ("L5", 6): _l5_6,
    ("L5", 7): _l5_7,
    ("L5", 8): _l5_8,
}


# ---------------------------------------------------------------------------
# reduce and extend


@dataclass(frozen=True)
class TraceStep:
    match: ConfigurationMatch
    placements: tuple[tuple[int, str], ...]
    method: str  # "fast", "search" or "widen:<r>"
    freed: tuple[int, ...] = ()
    search_agrees: bool | None = None

    def record(self) -> dict:
        rec = self.match.record()
        rec.update({"placements": {v: c for v, c in self.placements}, "method": self.method,
                    "freed": list(self.freed)})
        if self.search_agrees is not None:
            rec["search_agrees"] = self.search_agrees
        return rec


@dataclass
class ReductionTrace:
    scheme: str
    steps: list[TraceStep] = field(default_factory=list)

    def methods(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.steps:
            out[s.method] = out.get(s.method, 0) + 1
        return out

    def replay(self, g: Graph) -> bool:
        """Forward deletions empty the graph; undoing them restores it exactly."""
        cur = g
        removed: list[frozenset[int]] = []
        for step in self.steps:
            d = step.match.deletion
            if not d <= set(cur.vertices()):
                return False
            removed.append(d)
            cur = cur.delete(d)
        if cur.order() != 0:
            return False
        restored: set[int] = set()
        for d in reversed(removed):
            restored |= d
        return g.induced(restored) == g


def _claim5_prepare(host: Graph, cycle: frozenset[int], cls: dict[int, int], scheme: str) -> None:
    """Move low-degree vertices of ``host - C`` (and their 2-neighbors) into F when legal."""
    rest = host.delete(cycle)
    low = [v for v in rest.vertices() if rest.degree(v) <= 1]
    cand = set(low)
    for v in rest.vertices():
        if rest.degree(v) == 2 and any(rest.degree(w) == 1 for w in rest.neighbors(v)):
            cand.add(v)
    for v in sorted(cand):
        if cls.get(v, 0) == 0:
            continue
        old = cls.pop(v)
        eng = _Engine(rest, scheme, cls)
        if eng.feasible(v, 0):
            cls[v] = 0
        else:
            cls[v] = old


def _search_with_widening(host: Graph, scheme: str, cls: dict[int, int], deleted: frozenset[int],
                          budget: int) -> tuple[dict[int, int], str, tuple[int, ...]]:
    alive = set(host.vertices())
    attempts: list[tuple[str, set[int]]] = [("search", set(deleted))]
    for r in (1, 2, 3):
        ball: set[int] = set()
        for v in deleted:
            ball.update(bfs_distances(host, v, r))
        attempts.append((f"widen:{r}", ball & alive))
    comp: set[int] = set()
    for c in components(host):
        if deleted & set(c):
            comp.update(c)
    attempts.append(("widen:component", comp))
    last = None
    for label, free in attempts:
        if free == last:
            continue
        last = free
        fixed = {v: c for v, c in cls.items() if v not in free}
        try:
            eng = _Engine(host, scheme, fixed)
        except PartitionError:
            continue
        got = eng.search(_bfs_order(host, free), budget=budget if label != "widen:component" else 10 * budget)
        if got is not None:
            return got, label, tuple(sorted(free - deleted))
    raise ExtensionNotFound("no extension found after widening", host, deleted)


def _run(g: Graph, scheme: str, cross_check: bool = False, budget: int = DEFAULT_BUDGET,
         check_each_step: bool = True, chooser: random.Random | None = None) -> tuple[Partition, ReductionTrace]:
    """``chooser`` (a seeded RNG) reduces at a random match instead of the first."""
    family = FAMILY_OF[scheme]
    names = SCHEMES[scheme]
    index = {c: i for i, c in enumerate(names)}
    stack: list[tuple[Graph, ConfigurationMatch]] = []
    cur = g
    while cur.order():
        if chooser is None:
            m = detect(cur, family)
        else:
            options = list(iter_matches(cur, family))
            m = chooser.choice(options) if options else None
            if m is not None and not validate_match(cur, m):
                raise AssertionError(f"detector produced an invalid match: {m.record()}")
        if m is None:
            raise LemmaFalsified(f"{family} detector found no configuration", cur)
        stack.append((cur, m))
        cur = cur.delete(m.deletion)

    cls: dict[int, int] = {}
    steps: list[TraceStep] = []
    for host, m in reversed(stack):
        if (m.family, m.kind) == ("L2", 6):
            _claim5_prepare(host, m.deletion, cls, scheme)
        fast = FAST_PATHS.get((m.family, m.kind))
        got: dict[int, int] | None = None
        method, freed, agrees = "search", (), None
        if fast is not None:
            ctx = _Ctx(host, m.role, {v: names[c] for v, c in cls.items()}, names)
            proposal = fast(ctx)
            if proposal is not None:
                free = set(m.deletion) | set(proposal)
                prefer = {v: 0 for v in m.deletion}
                prefer.update({v: index[c] for v, c in proposal.items()})
                fixed = {v: c for v, c in cls.items() if v not in free}
                got = _Engine(host, scheme, fixed).search(_bfs_order(host, free), prefer, only=True, budget=budget)
                if got is not None:
                    method, freed = "fast", tuple(sorted(free - m.deletion))
                    if cross_check:
                        probe = _Engine(host, scheme, fixed).search(_bfs_order(host, free), budget=budget)
                        agrees = probe is not None
        if got is None:
            got, method, freed = _search_with_widening(host, scheme, cls, m.deletion, budget)
        cls.update(got)
        if check_each_step:
            part = Partition.from_assignment(scheme, {v: names[c] for v, c in cls.items()})
            verdict = verify_partition(host, part)
            if not verdict.ok:
                raise AssertionError(f"extension produced an invalid partition: {verdict.record()}")
        placements = tuple(sorted((v, names[got[v]]) for v in got))
        steps.append(TraceStep(m, placements, method, freed, agrees))

    steps.reverse()
    part = Partition.from_assignment(scheme, {v: names[c] for v, c in cls.items()})
    verdict = verify_partition(g, part)
    if not verdict.ok:
        raise AssertionError(f"final partition invalid: {verdict.record()}")
    return part, ReductionTrace(scheme, steps)


def _check_pre(g: Graph, scheme: str, require_girth: bool) -> None:
    if not mad_below(g, BOUND_OF[scheme]):
        b = BOUND_OF[scheme]
        raise PreconditionError(f"Mad(G) >= {b.numerator}/{b.denominator}")
    if require_girth and girth(g) < 6:
        raise PreconditionError("girth below 6")


def decompose_FI(g: Graph, **kw) -> tuple[Partition, ReductionTrace]:
    _check_pre(g, "FI", False)
    return _run(g, "FI", **kw)


def decompose_FI1I2(g: Graph, require_girth: bool = True, **kw) -> tuple[Partition, ReductionTrace]:
    _check_pre(g, "FI1I2", require_girth)
    return _run(g, "FI1I2", **kw)


def decompose_FI1I2I3(g: Graph, require_girth: bool = True, **kw) -> tuple[Partition, ReductionTrace]:
    _check_pre(g, "FI1I2I3", require_girth)
    return _run(g, "FI1I2I3", **kw)


DECOMPOSERS = {"FI": decompose_FI, "FI1I2": decompose_FI1I2, "FI1I2I3": decompose_FI1I2I3}
