"""Command-line front end.

Exit codes: 0 success, 1 negative result or property violation, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .colorize import NotCoveredError, star_color
from .config import FAMILIES, detect
from .decompose import DECOMPOSERS, DecomposeError, PreconditionError
from .density import DensityError, format_rational, mad_bruteforce, mad_exact, parse_rational
from .discharge import apply_rules, audit_discharging
from .formats import FORMATS, ParseError, guess_format, parse_graph, serialize_graph
from .gen import METHODS, PRNG_ID, GeneratorError, GeneratorSpec, extremal_search, random_sparse
from .graph import Graph, GraphError, classify_vertex
from .star import Coloring, ColoringError, verify_star

ROUTE_ALIASES = {
    "auto": "auto",
    "forest": "forest3",
    "thm1": "thm_i_4",
    "thm2": "thm_ii_5",
    "thm3": "thm_iii_6",
    "exact": "exact_solver",
}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(path: str, fmt: str | None) -> Graph:
    text = _read(path)
    return parse_graph(text, fmt or guess_format(text, None if path == "-" else path))


def parse_coloring(text: str) -> Coloring:
    colors = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'vertex color', got {line!r}", line=lineno)
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", line=lineno) from None
        if v in colors:
            raise ParseError(f"vertex {v} colored twice", line=lineno)
        if c < 0:
            raise ParseError("negative color", line=lineno)
        colors[v] = c
    return Coloring.from_mapping(colors)


def _emit(args: argparse.Namespace, record: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True, default=str))
    else:
        for line in lines:
            print(line)


def _workers() -> int:
    raw = os.environ.get("STARDECOMP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"STARDECOMP_THREADS must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_mad(args: argparse.Namespace) -> int:
    g = load_graph(args.input, args.format)
    if g.order() == 0:
        raise UsageError("Mad is undefined for a graph with no vertices")
    res = mad_bruteforce(g) if args.brute else mad_exact(g)
    rec = {"mad": format_rational(res.value)}
    lines = [format_rational(res.value)]
    if args.witness:
        rec["witness"] = list(res.witness)
        lines.append("witness " + " ".join(map(str, res.witness)))
    _emit(args, rec, lines)
    return 0


def cmd_color(args: argparse.Namespace) -> int:
    g = load_graph(args.input, args.format)
    try:
        cert = star_color(g, allow_exact_fallback=not args.no_exact, route=ROUTE_ALIASES[args.route])
    except NotCoveredError as exc:
        _emit(args, {"status": "not-covered", "reason": str(exc)}, [f"not covered: {exc}"])
        return 1
    if args.verify and not verify_star(g, cert.coloring).ok:
        return 1
    lines = [f"route {cert.route}", f"palette {cert.coloring.palette_size}"]
    lines += [f"{v} {c}" for v, c in sorted(cert.coloring.colors.items())]
    _emit(args, cert.record(), lines)
    return 0


def cmd_detect(args: argparse.Namespace) -> int:
    g = load_graph(args.input, args.format)
    m = detect(g, args.family)
    if m is None:
        _emit(args, {"family": args.family, "match": None}, ["none"])
        return 1
    rec = m.record()
    roles = " ".join(f"{k}={v}" for k, v in m.roles)
    params = " ".join(f"{k}={v}" for k, v in m.params)
    lines = [f"{m.family} kind {m.kind}: {m.name}", f"roles {roles}" + (f" ({params})" if params else ""),
             "delete " + " ".join(map(str, sorted(m.deletion)))]
    _emit(args, rec, lines)
    return 0


def cmd_discharge(args: argparse.Namespace) -> int:
    g = load_graph(args.input, args.format)
    ledger = apply_rules(g, args.family)
    report = audit_discharging(g, args.family, ledger)
    rec = report.record()
    rec["transfers"] = len(ledger.transfers)
    if args.plot:
        from .report import plot_charges

        rec["plot"] = str(plot_charges(ledger, args.plot))
    lines = ["vertex\tdegree\tprofile\tinitial\tfinal"]
    for v in g.vertices():
        lines.append(f"{v}\t{g.degree(v)}\t{classify_vertex(g, v).label()}\t"
                     f"{format_rational(ledger.initial[v])}\t{format_rational(ledger.final[v])}")
    lines.append(f"# bank {format_rational(ledger.bank)}  threshold {format_rational(report.threshold)}  "
                 f"conserved {report.conserved}  vacuous {report.vacuous}  passed {report.passed}")
    for viol in report.violations:
        lines.append(f"# violation vertex {viol.vertex} {viol.profile} charge {format_rational(viol.charge)}")
    _emit(args, rec, lines)
    return 0 if report.passed else 1


def cmd_verify(args: argparse.Namespace) -> int:
    g = load_graph(args.graph, args.format)
    coloring = parse_coloring(_read(args.coloring))
    verdict = verify_star(g, coloring)
    if verdict.ok:
        line = "ok"
    else:
        line = f"violation {verdict.kind} " + " ".join(map(str, verdict.violation or ()))
    _emit(args, verdict.record(), [line])
    return 0 if verdict.ok else 1


def cmd_search(args: argparse.Namespace) -> int:
    stream = None
    if args.stream:
        stream = _read(args.stream).splitlines()
    records = extremal_search(args.max_n, args.target, stream, cap=args.cap, workers=_workers())
    if args.limit is not None:
        records = records[: args.limit]
    rec = {"target": args.target, "count": len(records),
           "min_mad": format_rational(records[0].mad) if records else None,
           "records": [r.row().split("\t") for r in records]}
    if args.plot:
        from .report import plot_extremal

        rec["plot"] = str(plot_extremal(records, args.plot, args.target))
    lines = ["graph6\tmad\tchi_s"] + [r.row() for r in records]
    _emit(args, rec, lines)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    spec = GeneratorSpec(args.n, parse_rational(args.bound), args.girth, args.seed, args.method)
    try:
        g = random_sparse(spec)
    except GeneratorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps({"prng": PRNG_ID, "method": spec.method, "seed": spec.seed,
                          "graph": serialize_graph(g, args.out_format)}))
    else:
        sys.stdout.write(serialize_graph(g, args.out_format))
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    g = load_graph(args.input, args.format)
    kw = {} if args.scheme == "FI" else {"require_girth": not args.no_girth}
    try:
        part, trace = DECOMPOSERS[args.scheme](g, **kw)
    except PreconditionError as exc:
        _emit(args, {"status": "precondition", "reason": str(exc)}, [f"precondition failed: {exc}"])
        return 1
    rec = {"scheme": part.scheme, "classes": {c: sorted(vs) for c, vs in part.classes.items()},
           "methods": trace.methods(), "trace": [s.record() for s in trace.steps] if args.trace else None}
    lines = part.lines()
    if args.trace:
        lines += [f"# {s.match.family}.{s.match.kind} {s.method} delete {sorted(s.match.deletion)}" for s in trace.steps]
    _emit(args, rec, lines)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stardecomp", description="Star colorings of sparse graphs via forest decompositions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--format", choices=FORMATS, help="input format (guessed when omitted)")
        sp.add_argument("--json", action="store_true", help="print one JSON record")

    sp = sub.add_parser("mad", help="exact maximum average degree")
    sp.add_argument("input", help="graph file, or - for stdin")
    sp.add_argument("--brute", action="store_true", help="use exhaustive enumeration (n <= 16)")
    sp.add_argument("--witness", action="store_true", help="also print a densest vertex set")
    common(sp)
    sp.set_defaults(func=cmd_mad)

    sp = sub.add_parser("color", help="star-color a graph with a certificate")
    sp.add_argument("input")
    sp.add_argument("--route", choices=sorted(ROUTE_ALIASES), default="auto")
    sp.add_argument("--verify", action="store_true", help="re-run the verifier on the output")
    sp.add_argument("--no-exact", action="store_true", help="do not fall back to the exact solver")
    common(sp)
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("detect", help="first reducible configuration of a family")
    sp.add_argument("input")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    common(sp)
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("discharge", help="apply a family's discharging rules and audit the result")
    sp.add_argument("input")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--plot", metavar="PATH", help="write a histogram of final charges")
    common(sp)
    sp.set_defaults(func=cmd_discharge)

    sp = sub.add_parser("verify", help="check a coloring given as 'vertex color' lines")
    sp.add_argument("graph")
    sp.add_argument("coloring")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search", help="graphs with large star chromatic number, by Mad")
    sp.add_argument("--target", type=int, required=True, help="keep graphs with chi_s > target")
    sp.add_argument("--stream", help="graph6 file (one graph per line), or - for stdin")
    sp.add_argument("--max-n", type=int, default=6, help="skip larger graphs; bound for internal enumeration")
    sp.add_argument("--cap", type=int, default=None, help="stop the exact solver above this many colors")
    sp.add_argument("--limit", type=int, default=None, help="print only the first records")
    sp.add_argument("--plot", metavar="PATH", help="write a Mad-versus-order scatter plot")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("gen", help="seeded sparse graph meeting a Mad bound and girth")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", required=True, help="strict Mad bound, for example 26/11")
    sp.add_argument("--girth", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--method", choices=METHODS, default="subdivision")
    sp.add_argument("--out-format", choices=FORMATS, default="edgelist")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("decompose", help="forest plus independent sets partition")
    sp.add_argument("input")
    sp.add_argument("--scheme", choices=sorted(DECOMPOSERS), required=True)
    sp.add_argument("--no-girth", action="store_true", help="do not require girth >= 6")
    sp.add_argument("--trace", action="store_true", help="include the reduction trace")
    common(sp)
    sp.set_defaults(func=cmd_decompose)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "search" and args.target < 1:
        parser.error("--target must be at least 1")
    try:
        return args.func(args)
    except (UsageError, ParseError, GraphError, DensityError, ColoringError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DecomposeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
