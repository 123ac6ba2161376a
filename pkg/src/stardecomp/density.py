"""Exact maximum average degree.

``Mad(G)`` is the largest ``2|E(H)|/|V(H)|`` over non-empty subgraphs ``H``.
The maximum is attained on an induced subgraph, so every candidate value is
``2m/k`` with ``1 <= k <= n`` and ``0 <= m <= |E|``.  :func:`mad_exact` binary
searches that finite set with a min-cut feasibility test; :func:`mad_bruteforce`
enumerates vertex subsets and is kept as an independent oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graph import Graph

Rational = Fraction


class DensityError(ValueError):
    pass


@dataclass(frozen=True)
class MadResult:
    value: Fraction
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return format_rational(self.value)


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def density(g: Graph, vertices) -> Fraction:
    """``2|E(G[S])| / |S|`` for a non-empty vertex set ``S``."""
    s = set(vertices)
    if not s:
        raise DensityError("density of the empty set is undefined")
    inner = sum(1 for v in s for w in g.neighbors(v) if w in s) // 2
    return Fraction(2 * inner, len(s))


class _FlowNetwork:
    """Dinic max-flow on integer capacities; enough for densest-subgraph cuts."""

    def __init__(self, size: int):
        self.size = size
        self.head: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, c: int, rc: int = 0) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(rc)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        to, cap, head = self.to, self.cap, self.head
        while True:
            level = [-1] * self.size
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for e in head[u]:
                    if cap[e] > 0 and level[to[e]] < 0:
                        level[to[e]] = level[u] + 1
                        queue.append(to[e])
            if level[t] < 0:
                return flow
            it = [0] * self.size

            def push(u: int, f: int) -> int:
                if u == t:
                    return f
                edges = head[u]
                while it[u] < len(edges):
                    e = edges[it[u]]
                    v = to[e]
                    if cap[e] > 0 and level[v] == level[u] + 1:
                        d = push(v, min(f, cap[e]))
                        if d:
                            cap[e] -= d
                            cap[e ^ 1] += d
                            return d
                    it[u] += 1
                return 0

            while True:
                f = push(s, 1 << 62)
                if not f:
                    break
                flow += f

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def _densest_at_least(g: Graph, bound: Fraction) -> tuple[int, ...] | None:
    """A non-empty ``S`` with ``2|E(S)| >= bound*|S|``, or ``None``.

    Maximizes ``(n+1)*(2q|E(S)| - p|S|) + |S|`` by one min cut
    (Goldberg's network).  The extra ``+|S|`` makes any non-empty ``S`` with
    non-negative slack strictly positive, so the empty set never ties.
    """
    vs = g.vertices()
    n = len(vs)
    if n == 0:
        return None
    p, q = bound.numerator, bound.denominator
    scale = n + 1
    edge_w = q * scale  # per edge endpoint
    vert_w = p * scale - 1  # per vertex (may be negative when p = 0)
    index = {v: i for i, v in enumerate(vs)}
    degs = [g.degree(v) for v in vs]
    big = edge_w * max(degs, default=0) + abs(vert_w) + 1
    s, t = n, n + 1
    net = _FlowNetwork(n + 2)
    for i, v in enumerate(vs):
        net.add_edge(s, i, big)
        net.add_edge(i, t, big + vert_w - edge_w * degs[i])
    for u, v in g.edges():
        net.add_edge(index[u], index[v], edge_w, edge_w)
    cut = net.max_flow(s, t)
    best = big * n - cut
    if best <= 0:
        return None
    side = net.source_side(s)
    return tuple(vs[i] for i in range(n) if i in side)


def mad_below(g: Graph, bound: Fraction) -> bool:
    """Exact test of ``Mad(g) < bound`` with a single min cut."""
    bound = Fraction(bound)
    if g.order() == 0:
        return True
    if bound <= 0:
        return False
    return _densest_at_least(g, bound) is None


def mad_exact(g: Graph) -> MadResult:
    """Exact ``Mad(g)`` with a densest induced subgraph as witness."""
    if g.order() == 0:
        raise DensityError("Mad is undefined for the empty graph")
    n, m = g.order(), g.size()
    if m == 0:
        return MadResult(Fraction(0), (g.vertices()[0],))
    candidates = sorted({Fraction(2 * e, k) for k in range(1, n + 1) for e in range(0, m + 1) if 2 * e <= k * (k - 1)})
    # invariant: candidates[lo] is attained, candidates[hi] is not (hi may be past the end)
    lo, hi = 0, len(candidates)
    witness = _densest_at_least(g, Fraction(0))
    while hi - lo > 1:
        mid = (lo + hi) // 2
        found = _densest_at_least(g, candidates[mid])
        if found is None:
            hi = mid
        else:
            lo, witness = mid, found
    value = candidates[lo]
    if witness is None or density(g, witness) != value:
        witness = _densest_at_least(g, value)
    assert witness is not None and density(g, witness) == value
    return MadResult(value, tuple(witness))


def mad_bruteforce(g: Graph, max_n: int = 16) -> MadResult:
    """Exhaustive maximum over all non-empty vertex subsets."""
    vs = g.vertices()
    n = len(vs)
    if n == 0:
        raise DensityError("Mad is undefined for the empty graph")
    if n > max_n:
        raise DensityError(f"graph has {n} vertices; brute force is limited to {max_n}")
    index = {v: i for i, v in enumerate(vs)}
    nbmask = [0] * n
    for u, v in g.edges():
        nbmask[index[u]] |= 1 << index[v]
        nbmask[index[v]] |= 1 << index[u]
    best = Fraction(-1)
    best_set: tuple[int, ...] = ()
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for i in combo:
                mask |= 1 << i
            twice_e = sum(bin(nbmask[i] & mask).count("1") for i in combo)
            d = Fraction(twice_e, k)
            if d > best:
                best, best_set = d, tuple(vs[i] for i in combo)
    return MadResult(best, best_set)
