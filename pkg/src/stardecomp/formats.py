"""Text formats: graph6, DIMACS edge format and plain edge lists."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph, GraphError

FORMATS = ("graph6", "dimacs", "edgelist")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.offset = offset


# ---------------------------------------------------------------------------
# graph6


def _g6_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise ParseError("empty graph6 string", offset=0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field", offset=1)
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        return n, 4
    if len(data) < 8:
        raise ParseError("truncated graph6 size field", offset=2)
    n = 0
    for b in data[2:8]:
        n = (n << 6) | (b - 63)
    return n, 8


def _g6_size_bytes(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])


def parse_graph6(text: str | bytes) -> Graph:
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if data.startswith(b":") or data.startswith(b"&"):
        raise ParseError("sparse6/digraph6 input is not supported", offset=0)
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise ParseError(f"invalid graph6 byte {b!r}", offset=i)
    n, start = _g6_size(data)
    nbits = n * (n - 1) // 2
    body = data[start:]
    if len(body) != (nbits + 5) // 6:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}", offset=start)
    edges = []
    k = 0
    bits = [(b - 63) >> s & 1 for b in body for s in (5, 4, 3, 2, 1, 0)]
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    if any(bits[nbits:]):
        raise ParseError("nonzero padding bits in graph6 string", offset=len(data) - 1)
    return Graph.from_edges(n, edges)


def serialize_graph6(g: Graph) -> str:
    h, _ = g.compact()
    n = h.n
    bits = []
    for v in range(1, n):
        nb = h.nset(v)
        bits.extend(1 if u in nb else 0 for u in range(v))
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + (bits[i] << 5 | bits[i + 1] << 4 | bits[i + 2] << 3 | bits[i + 3] << 2 | bits[i + 4] << 1 | bits[i + 5])
        for i in range(0, len(bits), 6)
    )
    return (_g6_size_bytes(n) + body).decode("ascii")


def iter_graph6(stream: Iterable[str] | TextIO) -> Iterator[Graph]:
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_graph6(line)
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None


# ---------------------------------------------------------------------------
# DIMACS and edge lists


def _build(n: int, edges: list[tuple[int, int]], where: list[int]) -> Graph:
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        # locate the offending line for the message
        seen: set[tuple[int, int]] = set()
        for (u, v), line in zip(edges, where):
            if u == v or (min(u, v), max(u, v)) in seen or not (0 <= u < n and 0 <= v < n):
                raise ParseError(str(exc), line=line) from None
            seen.add((min(u, v), max(u, v)))
        raise ParseError(str(exc)) from None


def parse_dimacs(text: str) -> Graph:
    n = None
    m_declared = None
    edges: list[tuple[int, int]] = []
    where: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"bad problem line {line!r}", line=lineno)
            if n is not None:
                raise ParseError("duplicate problem line", line=lineno)
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"bad problem line {line!r}", line=lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", line=lineno)
            if len(parts) != 3:
                raise ParseError(f"bad edge line {line!r}", line=lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise ParseError(f"bad edge line {line!r}", line=lineno) from None
            edges.append((u, v))
            where.append(lineno)
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", line=lineno)
    if n is None:
        raise ParseError("missing 'p edge n m' line")
    if m_declared != len(edges):
        raise ParseError(f"header declares {m_declared} edges, found {len(edges)}")
    return _build(n, edges, where)


def serialize_dimacs(g: Graph) -> str:
    h, _ = g.compact()
    lines = [f"p edge {h.n} {h.size()}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in h.edges())
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    where: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            if n is not None or edges:
                raise ParseError("vertex-count header must come first", line=lineno)
            try:
                n = int(line[2:])
            except ValueError:
                raise ParseError(f"bad header {line!r}", line=lineno) from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise ParseError("negative vertex id", line=lineno)
        edges.append((u, v))
        where.append(lineno)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return _build(n, edges, where)


def serialize_edgelist(g: Graph) -> str:
    h, _ = g.compact()
    lines = [f"n={h.n}"]
    lines.extend(f"{u} {v}" for u, v in h.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str, format: str = "edgelist") -> Graph:
    if format == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError(f"expected one graph6 line, got {len(lines)}")
        return parse_graph6(lines[0])
    if format == "dimacs":
        return parse_dimacs(text)
    if format == "edgelist":
        return parse_edgelist(text)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def serialize_graph(g: Graph, format: str = "edgelist") -> str:
    if format == "graph6":
        return serialize_graph6(g) + "\n"
    if format == "dimacs":
        return serialize_dimacs(g)
    if format == "edgelist":
        return serialize_edgelist(g)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def guess_format(text: str, filename: str | None = None) -> str:
    if filename:
        for suffix, fmt in ((".g6", "graph6"), (".graph6", "graph6"), (".col", "dimacs"), (".dimacs", "dimacs")):
            if filename.endswith(suffix):
                return fmt
    stripped = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("c")]
    if stripped and stripped[0].startswith("p "):
        return "dimacs"
    if len(stripped) == 1 and " " not in stripped[0] and not stripped[0].startswith("n="):
        return "graph6"
    return "edgelist"
