"""Command line interface: ``k3frag fragments|search|verify|encode|decode``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from typing import Dict, List, Optional, TextIO

from . import expected
from .encoding import EncodingError, parse_encoding, print_encoding
from .graphs import Multigraph, girth
from .records import HEADER, dump_line, write_result

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_BUDGET = 4

DEGREE_MAX = 32
# degrees whose search is part of ``verify`` without --long-run
SEARCH_SCOPE = range(12, DEGREE_MAX + 1)
LONG_RUN = (6, 8, 10)


class UsageError(Exception):
    pass


def _degree(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise UsageError(f"degree must be an integer, got {text!r}") from None
    if d < 2 or d > DEGREE_MAX or d % 2:
        raise UsageError(f"degree must be even and between 2 and {DEGREE_MAX}, got {d}")
    return d


def _degree_range(text: str) -> List[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise UsageError(f"expected A..B, got {text!r}")
    a = _degree(m.group(1))
    b = _degree(m.group(2)) if m.group(2) else a
    if b < a:
        raise UsageError("empty degree range")
    return list(range(a, b + 1, 2))


def parse_budget(text: Optional[str]):
    """``tiny``, a node count ``N`` or a time ``Ns``/``Nm``/``Nh``."""
    if text is None:
        return None, None
    if text == "tiny":
        return 1, None
    m = re.fullmatch(r"(\d+(?:\.\d+)?)([smh]?)", text.strip())
    if not m:
        raise UsageError(f"bad budget {text!r}")
    value, unit = m.groups()
    if not unit:
        if "." in value:
            raise UsageError("node budgets are integers")
        return int(value), None
    return None, float(value) * {"s": 1, "m": 60, "h": 3600}[unit]


# ---------------------------------------------------------------------------
# fragments


def fragment_record(f) -> dict:
    return {"type": "fragment", "degree": f.degree, "name": f.name, "encoding": f.encoding,
            "rank": f.rank, "girth": f.girth, "aut": f.aut_order,
            "adjacency": [list(f.graph.neighbors(v)) for v in range(f.graph.n)]}


def cmd_fragments(args, out: TextIO) -> int:
    from .search import catalogue

    d = _degree(args.degree)
    cat = catalogue(d)
    if args.format == "records":
        out.write(HEADER + "\n")
        for f in cat.fragments:
            out.write(dump_line(fragment_record(f)) + "\n")
        return EXIT_OK
    out.write(f"degree {d}: {len(cat)} fragments\n")
    for f in cat.fragments:
        out.write(f"{f.name}  {f.triple}  {f.encoding}\n")
        for v in range(f.graph.n):
            out.write(f"    {v}: {' '.join(map(str, f.graph.neighbors(v)))}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def _search_config(args, d: int):
    from .search import SearchConfig

    nodes, seconds = parse_budget(args.budget)
    return SearchConfig(d, workers=args.workers, max_nodes=nodes, max_seconds=seconds,
                        checkpoint=args.checkpoint)


def cmd_search(args, out: TextIO, err: TextIO) -> int:
    from .search import search

    d = _degree(args.degree)
    if d in (2, 4):
        raise UsageError("degrees 2 and 4 are not searched")
    if d == 6 and not args.long_run:
        raise UsageError("degree 6 needs --long-run")
    cfg = _search_config(args, d)
    res = search(cfg, resume=args.resume)
    if args.format == "records":
        write_result(res, out)
    else:
        out.write(f"degree {d}: {len(res.hconfigs)} h-configurations, max {res.max_count}, "
                  f"{len(res.configurations)} configurations, "
                  f"{'complete' if res.complete else 'INCOMPLETE'}\n")
        for h in res.hconfigs:
            out.write(f"  {h.key[:12]}  census {list(h.census)}  total {h.total}  rank {h.rank}  "
                      f"|Aut| {h.aut_order}  configurations {len(h.configurations)}"
                      f"{'  maximal' if h.maximal else ''}\n")
    if not res.complete:
        err.write("search budget exhausted; result is incomplete\n")
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def load_expected(path: Optional[str]) -> Dict[str, dict]:
    """Reference tables, optionally overridden by a JSON file.

    The file maps table names (``graphs``, ``triples``, ``max_count``,
    ``h_configs``, ``census``, ``census_multiplicity``, ``configurations``)
    to dictionaries keyed by degree.
    """
    tables = {
        "graphs": dict(expected.GRAPHS),
        "triples": dict(expected.TRIPLES),
        "max_count": dict(expected.MAX_COUNT),
        "h_configs": dict(expected.H_CONFIGS),
        "census": dict(expected.CENSUS),
        "census_multiplicity": dict(expected.CENSUS_MULTIPLICITY),
        "configurations": dict(expected.CONFIGURATIONS),
    }
    if path:
        with open(path) as f:
            data = json.load(f)
        for name, table in data.items():
            if name not in tables:
                raise UsageError(f"unknown table {name!r} in {path}")
            tables[name].update({int(k): v for k, v in table.items()})
    return tables


def _census_counter(columns, mult) -> Counter:
    out: Counter = Counter()
    for i, c in enumerate(columns):
        out[tuple(c)] += mult[i] if mult else 1
    return out


def cmd_verify(args, out: TextIO, err: TextIO) -> int:
    from .search import catalogue, search

    degrees = _degree_range(args.degrees)
    tables = load_expected(args.expected)
    failures = 0
    budget_hit = False

    def check(ok: bool, what: str, got, want):
        nonlocal failures
        failures += not ok
        out.write(f"{'PASS' if ok else 'FAIL'} {what}: got {got}, expected {want}\n")

    for d in degrees:
        cat = catalogue(d)
        check(len(cat) == tables["graphs"].get(d, 0), f"degree {d} fragments",
              len(cat), tables["graphs"].get(d, 0))
        if d in tables["triples"]:
            got = [f.triple for f in cat.fragments]
            want = [tuple(t) for t in tables["triples"][d]]
            check(got == want, f"degree {d} (r, g, s)", got, want)
        if args.fragments_only or not len(cat):
            continue
        if d not in SEARCH_SCOPE and not (args.long_run and d in LONG_RUN):
            continue
        res = search(_search_config(args, d))
        if not res.complete:
            budget_hit = True
            check(False, f"degree {d} search complete", False, True)
            continue
        want_h = tables["h_configs"].get(d)
        if want_h is not None:
            check(len(res.hconfigs) == want_h, f"degree {d} h-configurations", len(res.hconfigs), want_h)
        want_max = tables["max_count"].get(d)
        if want_max is not None:
            check(res.max_count == want_max, f"degree {d} max count", res.max_count, want_max)
        if d in tables["census"]:
            got_c = Counter(h.census for h in res.hconfigs)
            want_c = _census_counter(tables["census"][d], tables["census_multiplicity"].get(d))
            check(got_c == want_c, f"degree {d} censuses", sorted(got_c.items()), sorted(want_c.items()))
        if d in tables["configurations"]:
            per = {tuple(c): k for c, k in zip(tables["census"][d], tables["configurations"][d])}
            got_k = {h.census: len(h.configurations) for h in res.hconfigs}
            check(got_k == per, f"degree {d} configurations per census",
                  sorted(got_k.items()), sorted(per.items()))
    out.write(f"{'all checks passed' if not failures else f'{failures} checks failed'}\n")
    if failures:
        return EXIT_BUDGET if budget_hit and failures == 1 else EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# encode / decode


def _read_text(args) -> str:
    if args.file:
        with open(args.file) as f:
            return f.read()
    if args.text is None:
        raise UsageError("give a text argument or --file")
    return args.text


def parse_edge_list(text: str) -> Multigraph:
    """Edges ``u-v`` or ``u-v:m`` separated by whitespace or commas."""
    edges = []
    for pos, tok in ((m.start(), m.group()) for m in re.finditer(r"[^\s,]+", text)):
        m = re.fullmatch(r"(\d+)-(\d+)(?::(\d+))?", tok)
        if not m:
            raise EncodingError(f"bad edge {tok!r}", text, pos)
        u, v, k = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
        edges.append((u, v, k))
    if not edges:
        raise EncodingError("no edges", text, 0)
    n = 1 + max(max(u, v) for u, v, _ in edges)
    return Multigraph(n, edges)


def describe(g: Multigraph, out: TextIO):
    gi = girth(g)
    out.write(f"vertices {g.n}  edges {g.num_edges}  girth {gi if gi != float('inf') else 'inf'}  "
              f"|Aut| {g.canonical.aut_order}\n")
    for v in range(g.n):
        nb = []
        for w in g.neighbors(v):
            m = g.mult(v, w)
            nb.append(f"{w}" if m == 1 else f"{w}:{m}")
        out.write(f"  {v}: {' '.join(nb)}\n")


def cmd_decode(args, out: TextIO) -> int:
    text = _read_text(args)
    for line in [t for t in text.splitlines() if t.strip()] or [text]:
        g = parse_encoding(line)
        out.write(f"{line.strip()}\n")
        describe(g, out)
        if args.degree:
            from .fano import fano_lattice
            fl = fano_lattice(g, _degree(args.degree))
            out.write(f"  rank {fl.rank}\n")
    return EXIT_OK


def cmd_encode(args, out: TextIO) -> int:
    text = _read_text(args)
    for line in [t for t in text.splitlines() if t.strip()] or [text]:
        try:
            g = parse_encoding(line)
        except EncodingError:
            g = parse_edge_list(line)
        out.write(print_encoding(g) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3frag", description="Split hyperplane sections of polarized K3 surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fragments", help="list the fragments of one degree")
    f.add_argument("--degree", required=True)
    f.add_argument("--format", choices=("text", "records"), default="text")

    s = sub.add_parser("search", help="enumerate h-configurations of one degree")
    s.add_argument("--degree", required=True)
    s.add_argument("--format", choices=("text", "records"), default="text")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--budget", help="tiny, a node count N, or a time like 30s, 10m, 2h")
    s.add_argument("--checkpoint", help="write a resumable checkpoint to this path")
    s.add_argument("--resume", help="continue from a checkpoint")
    s.add_argument("--long-run", action="store_true", help="allow the degree 6 enumeration")

    v = sub.add_parser("verify", help="compare with the reference tables")
    v.add_argument("--degrees", required=True, help="A..B")
    v.add_argument("--fragments-only", action="store_true")
    v.add_argument("--long-run", action="store_true", help="also search degrees 6, 8 and 10")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--budget")
    v.add_argument("--checkpoint")
    v.add_argument("--expected", help="JSON file overriding the embedded tables")

    for name, helptext in (("encode", "print the encoding of a graph"),
                           ("decode", "print the graph of an encoding")):
        e = sub.add_parser(name, help=helptext)
        e.add_argument("text", nargs="?")
        e.add_argument("--file")
        if name == "decode":
            e.add_argument("--degree", help="also report the rank of the Fano lattice")
    return p


def main(argv: Optional[List[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if getattr(args, "workers", 1) < 1:
        err.write("k3frag: --workers must be positive\n")
        return EXIT_USAGE
    try:
        if args.command == "fragments":
            return cmd_fragments(args, out)
        if args.command == "search":
            return cmd_search(args, out, err)
        if args.command == "verify":
            return cmd_verify(args, out, err)
        if args.command == "encode":
            return cmd_encode(args, out)
        return cmd_decode(args, out)
    except UsageError as e:
        err.write(f"k3frag: {e}\n")
        return EXIT_USAGE
    except EncodingError as e:
        err.write(f"k3frag: {e}\n")
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())
