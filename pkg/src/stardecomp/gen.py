"""Instance supply: named graphs, seeded sparse generators, extremal search."""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .config import detect
from .density import _densest_at_least, mad_below, mad_exact
from .formats import iter_graph6
from .graph import Graph, bfs_distances, girth
from .star import optimal_star_coloring, star_chromatic_capped

PRNG_ID = "python-random-mt19937"
METHODS = ("subdivision", "rejection", "thread_graft")


class GeneratorError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# named graphs


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def edgeless(n: int) -> Graph:
    return Graph.from_edges(n, [])


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def heawood() -> Graph:
    ring = [(i, (i + 1) % 14) for i in range(14)]
    chords = [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph.from_edges(14, ring + chords)


def spider(*legs: int) -> Graph:
    """A center with one path per leg; a leg of length ``k`` has ``k`` edges."""
    edges = []
    nxt = 1
    for k in legs:
        prev = 0
        for _ in range(k):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def subdivide(g: Graph, k: int | dict[tuple[int, int], int]) -> Graph:
    """Replace each edge by a path with ``k`` new internal vertices."""
    h, _ = g.compact()
    nxt = h.n
    edges = []
    for e in h.edges():
        count = k if isinstance(k, int) else k.get(e, 0)
        chain = [e[0], *range(nxt, nxt + count), e[1]]
        nxt += count
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for g in graphs:
        h, _ = g.compact()
        edges.extend((u + off, v + off) for u, v in h.edges())
        off += h.n
    return Graph.from_edges(off, edges)


_NAMED = {
    "petersen": petersen,
    "heawood": heawood,
}


def named(name: str) -> Graph:
    """Catalog: Cn, Pn, Kn, Ka,b, En (edgeless), Sn (star K1,n), petersen,
    heawood, spider(l1,l2,...), sub(<name>,k)."""
    s = name.strip().replace(" ", "")
    low = s.lower()
    if low in _NAMED:
        return _NAMED[low]()
    m = re.fullmatch(r"sub\((.+),(\d+)\)", s)
    if m:
        return subdivide(named(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"spider\((\d+(?:,\d+)*)\)", low)
    if m:
        return spider(*map(int, m.group(1).split(",")))
    m = re.fullmatch(r"K_?\{?(\d+),(\d+)\}?", s)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"([CPKES])_?(\d+)", s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"C": cycle, "P": path, "K": complete, "E": edgeless, "S": star}[kind](n)
    raise KeyError(f"unknown graph name {name!r}")


# ---------------------------------------------------------------------------
# seeded sparse generators


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    mad_bound: Fraction
    girth_min: int = 3
    seed: int = 0
    method: str = "subdivision"

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        object.__setattr__(self, "mad_bound", Fraction(self.mad_bound))


def satisfies(g: Graph, bound: Fraction, girth_min: int) -> bool:
    return g.order() > 0 and mad_below(g, bound) and girth(g) >= girth_min


def _short_cycle_edge(g: Graph, limit: int, rng: random.Random) -> tuple[int, int] | None:
    """An edge on some cycle of length < ``limit``, if any."""
    for r in rng.sample(list(g.vertices()), g.order()):
        dist = {r: 0}
        parent = {r: -1}
        queue = [r]
        for x in queue:
            if 2 * dist[x] + 1 >= limit:
                break
            for y in g.neighbors(x):
                if y not in dist:
                    dist[y], parent[y] = dist[x] + 1, x
                    queue.append(y)
                elif parent[x] != y and dist[x] + dist[y] + 1 < limit:
                    return (x, y)
    return None


def _split_edge(edges: set[tuple[int, int]], e: tuple[int, int], new: int) -> None:
    edges.discard(e)
    edges.discard((e[1], e[0]))
    edges.add((min(e[0], new), max(e[0], new)))
    edges.add((min(e[1], new), max(e[1], new)))


def _repair(n: int, edges: set[tuple[int, int]], spec: GeneratorSpec, rng: random.Random, max_steps: int = 400) -> Graph:
    """Subdivide edges inside dense or short-cycle spots until the spec holds."""
    for _ in range(max_steps):
        g = Graph.from_edges(n, edges)
        e = _short_cycle_edge(g, spec.girth_min, rng) if spec.girth_min > 3 else None
        if e is None:
            dense = _densest_at_least(g, spec.mad_bound)
            if dense is None:
                return g
            wit = set(dense)
            inside = [x for x in sorted(edges) if x[0] in wit and x[1] in wit]
            e = rng.choice(inside)
        _split_edge(edges, e, n)
        n += 1
    raise GeneratorError("repair did not converge")


def _base_multigraph(rng: random.Random, b: int, dmin: int, dmax: int) -> list[tuple[int, int]]:
    stubs = []
    for v in range(b):
        stubs.extend([v] * rng.randint(dmin, dmax))
    if len(stubs) % 2:
        stubs.append(rng.randrange(b))
    rng.shuffle(stubs)
    return [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]


def _gen_subdivision(spec: GeneratorSpec, rng: random.Random) -> Graph:
    # base vertices of degree 3..dmax joined by chains of 2-vertices
    avg_sub = rng.choice([0.3, 0.6, 1.0, 1.5, 2.5])
    dmax = rng.choice([3, 4, 5, 6])
    b = max(2, round(spec.n / (1 + avg_sub * (dmax + 3) / 4)))
    base = _base_multigraph(rng, b, 3, dmax)
    n = b
    edges: set[tuple[int, int]] = set()
    seen: set[tuple[int, int]] = set()
    for u, v in base:
        k = int(avg_sub) + (1 if rng.random() < avg_sub - int(avg_sub) else 0)
        if rng.random() < 0.3:
            k = rng.choice([0, 1, 1, 2, 3])
        key = (min(u, v), max(u, v))
        if u == v:
            k = max(k, 2)
        elif key in seen:
            k = max(k, 1)
        seen.add(key)
        chain = [u, *range(n, n + k), v]
        n += k
        for a, c in zip(chain, chain[1:]):
            edges.add((min(a, c), max(a, c)))
    # occasional pendant trees
    for _ in range(rng.choice([0, 0, 1, 3])):
        a = rng.randrange(n)
        edges.add((a, n))
        n += 1
    return _repair(n, edges, spec, rng)


def _gen_rejection(spec: GeneratorSpec, rng: random.Random) -> Graph:
    n = max(spec.n, 2)
    for _ in range(200):
        target = int(float(spec.mad_bound) * n / 2 * rng.uniform(0.75, 1.0))
        edges: set[tuple[int, int]] = set()
        adj: dict[int, set[int]] = {v: set() for v in range(n)}
        tries = 0
        while len(edges) < target and tries < 20 * n:
            tries += 1
            u, v = rng.sample(range(n), 2)
            if v in adj[u]:
                continue
            if spec.girth_min > 3:
                g = Graph(n, [sorted(adj[x]) for x in range(n)])
                if bfs_distances(g, u, spec.girth_min - 2).get(v, spec.girth_min) < spec.girth_min - 1:
                    continue
            adj[u].add(v)
            adj[v].add(u)
            edges.add((min(u, v), max(u, v)))
        g = Graph.from_edges(n, edges)
        if satisfies(g, spec.mad_bound, spec.girth_min):
            return g
    raise GeneratorError("rejection sampling exhausted its attempts")


def _gen_thread_graft(spec: GeneratorSpec, rng: random.Random) -> Graph:
    start = max(spec.girth_min, 3) + rng.randrange(3)
    n = start
    edges = {(min(i, (i + 1) % start), max(i, (i + 1) % start)) for i in range(start)}
    failures = 0
    while n < spec.n and failures < 50:
        g = Graph.from_edges(n, edges)
        if rng.random() < 0.1:
            a = rng.randrange(n)
            trial = set(edges) | {(a, n)}
            edges, n = trial, n + 1
            continue
        a, b = rng.sample(range(n), 2) if n > 1 else (0, 0)
        d = bfs_distances(g, a).get(b, 10**9)
        length = rng.choice([1, 2, 2, 3, 3, 4, 5])  # edges on the ear
        length = max(length, spec.girth_min - d if d < 10**9 else 1)
        if length == 1 and (min(a, b), max(a, b)) in edges:
            length = 2
        chain = [a, *range(n, n + length - 1), b]
        trial = set(edges)
        for x, y in zip(chain, chain[1:]):
            trial.add((min(x, y), max(x, y)))
        h = Graph.from_edges(n + length - 1, trial)
        if mad_below(h, spec.mad_bound):
            edges, n = trial, n + length - 1
            failures = 0
        else:
            failures += 1
    g = Graph.from_edges(n, edges)
    if not satisfies(g, spec.mad_bound, spec.girth_min):
        raise GeneratorError("thread graft produced an invalid graph")
    return g


_GENERATORS = {
    "subdivision": _gen_subdivision,
    "rejection": _gen_rejection,
    "thread_graft": _gen_thread_graft,
}


def random_sparse(spec: GeneratorSpec) -> Graph:
    """Seeded graph with ``Mad < spec.mad_bound`` and girth ``>= spec.girth_min``."""
    if spec.mad_bound <= 1 and spec.n > 0:
        raise GeneratorError("mad_bound must exceed 1")
    rng = random.Random(f"{PRNG_ID}:{spec.method}:{spec.seed}:{spec.n}:{spec.mad_bound}:{spec.girth_min}")
    g = _GENERATORS[spec.method](spec, rng)
    if not satisfies(g, spec.mad_bound, spec.girth_min):
        raise GeneratorError("generator emitted a graph violating its spec")
    return g


def sweep(count: int, bound: Fraction, girth_min: int, seed: int = 0,
          n_range: tuple[int, int] = (8, 40)) -> Iterator[tuple[GeneratorSpec, Graph]]:
    """``count`` seeded instances cycling through the three methods."""
    rng = random.Random(f"{PRNG_ID}:sweep:{seed}:{bound}:{girth_min}")
    made = 0
    i = 0
    while made < count:
        method = METHODS[i % 3] if rng.random() < 0.8 else "subdivision"
        n = rng.randint(*n_range)
        if method == "rejection":
            n = min(n, 24)
        spec = GeneratorSpec(n, bound, girth_min, seed * 1_000_003 + i, method)
        i += 1
        try:
            g = random_sparse(spec)
        except GeneratorError:
            continue
        if rng.random() < 0.5:
            core = two_core(g)
            if core.order() >= 3:
                g = core
        made += 1
        yield spec, g


def two_core(g: Graph) -> Graph:
    """Repeatedly strip vertices of degree at most 1 (ids compacted)."""
    cur = g
    while True:
        low = [v for v in cur.vertices() if cur.degree(v) <= 1]
        if not low:
            return cur.compact()[0]
        cur = cur.delete(low)


# ---------------------------------------------------------------------------
# configuration-free instances for the discharging audits


def random_regular(n: int, d: int, rng: random.Random, tries: int = 200) -> Graph:
    """Random simple ``d``-regular graph: stub pairing that only accepts suitable pairs, restarting when stuck."""
    if n * d % 2 or d >= n:
        raise GeneratorError("no such regular graph")
    for _ in range(tries):
        stubs = [v for v in range(n) for _ in range(d)]
        pairs: set[tuple[int, int]] = set()
        while stubs:
            for _ in range(50):
                i, j = rng.randrange(len(stubs)), rng.randrange(len(stubs))
                u, v = stubs[i], stubs[j]
                if u != v and (min(u, v), max(u, v)) not in pairs:
                    break
            else:
                break
            pairs.add((min(u, v), max(u, v)))
            for k in sorted((i, j), reverse=True):
                stubs[k] = stubs[-1]
                stubs.pop()
        if not stubs:
            return Graph.from_edges(n, pairs)
    raise GeneratorError("stub pairing failed")


def config_free(family: str, rng: random.Random, girth_min: int = 3, max_tries: int = 500) -> Graph:
    """A graph with no configuration of ``family`` (necessarily outside its Mad bound).

    Built from a random regular graph of degree 3 to 6 with a sparse random
    subset of edges subdivided once or twice.
    """
    for _ in range(max_tries):
        d = rng.choice([3, 3, 4, 4, 5, 6])
        n = rng.randrange(d + 1 + (d + 1) % 2, 24, 1)
        if n * d % 2:
            n += 1
        try:
            base = random_regular(n, d, rng)
        except GeneratorError:
            continue
        p = rng.random()
        counts = {e: (rng.choice([1, 1, 1, 2]) if rng.random() < p else 0) for e in base.edges()}
        g = subdivide(base, counts)
        for _ in range(g.order()):
            e = _short_cycle_edge(g, girth_min, rng) if girth_min > 3 else None
            if e is None:
                break
            g = subdivide(g, {e: rng.choice([1, 2])})
        if girth(g) < girth_min:
            continue
        if detect(g, family) is None:
            return g
    raise GeneratorError(f"no configuration-free graph for {family} found")


# ---------------------------------------------------------------------------
# extremal search


@dataclass(frozen=True)
class ExtremalRecord:
    graph: Graph
    mad: Fraction
    star_chromatic: int
    capped: bool = False  # star_chromatic is a lower bound (cap exceeded)

    def row(self) -> str:
        from .formats import serialize_graph6
        from .density import format_rational

        chi = f">{self.star_chromatic - 1}" if self.capped else str(self.star_chromatic)
        return f"{serialize_graph6(self.graph)}\t{format_rational(self.mad)}\t{chi}"


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices (small ``n`` only)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def _evaluate(g: Graph, target: int, cap: int | None) -> ExtremalRecord | None:
    if g.order() == 0:
        return None
    limit = cap if cap is not None else g.order()
    chi = star_chromatic_capped(g, limit)
    if chi <= target:
        return None
    capped = chi > limit
    if not capped:
        col = optimal_star_coloring(g, limit)
        if col is None or col.palette_size != chi:
            raise AssertionError("solver disagreement on star chromatic number")
    return ExtremalRecord(g, mad_exact(g).value, chi, capped)


def _evaluate_line(args: tuple[str, int, int | None]) -> ExtremalRecord | None:
    from .formats import parse_graph6

    line, target, cap = args
    return _evaluate(parse_graph6(line), target, cap)


def extremal_search(max_n: int, target_colors: int, stream: Iterable[str] | None = None,
                    cap: int | None = None, workers: int = 1) -> list[ExtremalRecord]:
    """Graphs with ``chi_s > target_colors``, sorted by Mad ascending.

    With no stream, every labelled graph on up to ``max_n`` vertices is tried
    (practical for ``max_n <= 6``).  Streams are graph6 lines, for instance
    from an isomorph-free enumerator; graphs above ``max_n`` are skipped.
    ``workers > 1`` spreads stream lines over processes.
    """
    if stream is None:
        graphs: Iterable[Graph] = (g for n in range(1, max_n + 1) for g in all_graphs(n))
    else:
        graphs = (g for g in iter_graph6(stream) if g.order() <= max_n)
    records = []
    if workers > 1 and stream is not None:
        from concurrent.futures import ProcessPoolExecutor
        from .formats import serialize_graph6

        jobs = ((serialize_graph6(g), target_colors, cap) for g in graphs)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = [r for r in pool.map(_evaluate_line, jobs, chunksize=256) if r is not None]
    else:
        for g in graphs:
            rec = _evaluate(g, target_colors, cap)
            if rec is not None:
                records.append(rec)
    records.sort(key=lambda r: (r.mad, r.graph.order(), r.graph.size(), r.row()))
    return records
