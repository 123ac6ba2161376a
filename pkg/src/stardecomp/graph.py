"""Simple undirected graphs with stable vertex ids, plus structural queries.

A :class:`Graph` never reindexes its vertices.  Deleting vertices produces a
new view whose dead vertices keep their ids but have empty neighbor lists and
are absent from :meth:`Graph.vertices`.  Reductions can therefore refer to the
same vertex ids at every recursion depth.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INF = math.inf


class GraphError(ValueError):
    """Raised for structurally invalid graphs (loops, multi-edges, bad ids)."""


class Graph:
    """Immutable simple graph on vertex ids ``0..n-1`` with optional dead ids."""

    __slots__ = ("n", "_adj", "_alive", "_nsets")

    def __init__(self, n: int, adj: Sequence[Sequence[int]], alive: Iterable[int] | None = None):
        self.n = n
        self._adj = tuple(tuple(a) for a in adj)
        self._alive = tuple(range(n)) if alive is None else tuple(sorted(alive))
        self._nsets: tuple[frozenset[int], ...] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, [sorted(s) for s in nbrs])

    # basic queries ---------------------------------------------------

    def vertices(self) -> tuple[int, ...]:
        return self._alive

    def order(self) -> int:
        return len(self._alive)

    def __len__(self) -> int:
        return len(self._alive)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def nset(self, v: int) -> frozenset[int]:
        if self._nsets is None:
            self._nsets = tuple(frozenset(a) for a in self._adj)
        return self._nsets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nset(u)

    def is_alive(self, v: int) -> bool:
        return v in self.alive_set()

    def alive_set(self) -> frozenset[int]:
        return frozenset(self._alive)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in self._alive:
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def size(self) -> int:
        return sum(len(self._adj[v]) for v in self._alive) // 2

    def min_degree(self) -> int:
        return min((len(self._adj[v]) for v in self._alive), default=0)

    def max_degree(self) -> int:
        return max((len(self._adj[v]) for v in self._alive), default=0)

    # views -------------------------------------------------------------

    def delete(self, removed: Iterable[int]) -> "Graph":
        """Return the view with ``removed`` vertices deleted (ids preserved)."""
        gone = set(removed)
        if not gone:
            return self
        adj = [
            () if v in gone else tuple(w for w in a if w not in gone)
            for v, a in enumerate(self._adj)
        ]
        return Graph(self.n, adj, (v for v in self._alive if v not in gone))

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return self.delete(v for v in self._alive if v not in keep)

    def compact(self) -> tuple["Graph", list[int]]:
        """Relabel alive vertices to ``0..k-1``; returns the graph and old ids."""
        old = list(self._alive)
        index = {v: i for i, v in enumerate(old)}
        adj = [[index[w] for w in self._adj[v]] for v in old]
        return Graph(len(old), adj), old

    def check(self) -> None:
        """Assert the simple/symmetric/sorted invariants and the handshake sum."""
        alive = set(self._alive)
        total = 0
        for v in range(self.n):
            a = self._adj[v]
            if v not in alive and a:
                raise GraphError(f"dead vertex {v} has neighbors")
            if list(a) != sorted(set(a)):
                raise GraphError(f"neighbor list of {v} not sorted/simple")
            for w in a:
                if w == v:
                    raise GraphError(f"self-loop at {v}")
                if w not in alive or v not in self.nset(w):
                    raise GraphError(f"asymmetric edge ({v}, {w})")
            total += len(a)
        if total != 2 * self.size():
            raise GraphError("degree sum differs from 2|E|")

    # equality ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._alive == other._alive and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._alive, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.order()}, m={self.size()})"


# ---------------------------------------------------------------------------
# distances, girth, components


def bfs_distances(g: Graph, source: int, limit: float = INF) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du >= limit:
            continue
        for w in g.neighbors(u):
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    """Number of edges on a shortest ``u``-``v`` path, or ``inf``."""
    if u == v:
        return 0
    return bfs_distances(g, u).get(v, INF)


def ball(g: Graph, v: int, radius: int) -> set[int]:
    return set(bfs_distances(g, v, radius))


def components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in g.vertices():
        if s in seen:
            continue
        comp = sorted(bfs_distances(g, s))
        seen.update(comp)
        out.append(comp)
    return out


def is_forest(g: Graph) -> bool:
    return g.size() == g.order() - len(components(g))


def girth(g: Graph) -> float:
    """Length of a shortest cycle (``inf`` for forests).

    One BFS per vertex; a non-tree edge ``xy`` met from root ``r`` closes a
    closed walk of length ``d(x)+d(y)+1`` which bounds the girth from above
    and equals it for the root lying on a shortest cycle.
    """
    best = INF
    for r in g.vertices():
        dist = {r: 0}
        parent = {r: -1}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


# ---------------------------------------------------------------------------
# threads and vertex profiles


@dataclass(frozen=True)
class Thread:
    """A maximal run of degree-2 vertices between two ends.

    ``cyclic`` marks a whole cycle component of 2-vertices, reported with
    both ends equal to its smallest vertex (which is then not an internal).
    """

    ends: tuple[int, int]
    internals: tuple[int, ...]
    cyclic: bool = False

    @property
    def length(self) -> int:
        return len(self.internals)


@dataclass(frozen=True)
class VertexProfile:
    vertex: int
    degree: int
    signature: tuple[int, ...]

    def label(self) -> str:
        return f"{self.degree}_{{{','.join(map(str, self.signature))}}}"


def walk_thread(g: Graph, start: int, first: int) -> tuple[list[int], int]:
    """Follow 2-vertices from ``start`` through ``first``.

    Returns the internal vertices passed and the end vertex reached (a vertex
    of degree != 2, or ``start`` itself when the walk closes up).
    """
    internals: list[int] = []
    prev, cur = start, first
    while cur != start and g.degree(cur) == 2:
        internals.append(cur)
        a, b = g.neighbors(cur)
        prev, cur = cur, (b if a == prev else a)
    return internals, cur


def thread_lengths(g: Graph, v: int) -> list[int]:
    """Unsorted thread lengths, one per neighbor of ``v`` in neighbor order."""
    return [len(walk_thread(g, v, w)[0]) for w in g.neighbors(v)]


def classify_vertex(g: Graph, v: int) -> VertexProfile:
    """The ``k_{i1,...,ik}`` profile of ``v`` (signature sorted ascending)."""
    return VertexProfile(v, g.degree(v), tuple(sorted(thread_lengths(g, v))))


def profiles(g: Graph) -> dict[int, VertexProfile]:
    return {v: classify_vertex(g, v) for v in g.vertices()}


def dominates(signature: Sequence[int], pattern: Sequence[int]) -> bool:
    """True when a sorted signature is componentwise >= a sorted pattern."""
    return len(signature) == len(pattern) and all(s >= p for s, p in zip(signature, pattern))


def enumerate_threads(g: Graph) -> list[Thread]:
    """Every maximal thread exactly once, ordered by (ends, internals)."""
    out: list[Thread] = []
    seen_internal: set[int] = set()
    for v in g.vertices():
        if g.degree(v) == 2:
            continue
        for w in g.neighbors(v):
            internals, end = walk_thread(g, v, w)
            if internals:
                if internals[0] in seen_internal:
                    continue
                seen_internal.update(internals)
            elif end < v:
                continue
            out.append(Thread((v, end), tuple(internals)))
    for v in g.vertices():
        if g.degree(v) == 2 and v not in seen_internal:
            # all-2 cycle component
            w = g.neighbors(v)[0]
            internals, _ = walk_thread(g, v, w)
            seen_internal.add(v)
            seen_internal.update(internals)
            out.append(Thread((v, v), tuple(internals), cyclic=True))
    out.sort(key=lambda t: (t.ends, t.internals))
    return out
