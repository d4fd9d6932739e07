"""Text encoding of cubic line graphs by fibres and sections.

A graph is written as a list of fibre terms followed by intersection terms::

    AA[3](1;2;3;4) A[2](1,3;2,4) (1x2)(3x4)

``AA[n]`` / ``DD[n]`` are the affine diagrams of type A and D, ``A[n]``,
``D[n]``, ``E[n]`` the elliptic ones. Inside the parentheses every fibre
vertex that is not already trivalent in the fibre gets a group (separated by
``;``) listing the sections meeting it (separated by ``,``); a section
listed twice meets the vertex twice. ``(ixj)`` adds an edge between sections
``i`` and ``j``; repeating a term raises the multiplicity.

Vertex order inside each fibre:

* ``AA[n]``: the ``n + 1`` vertices in cyclic order.
* ``DD[n]``: leaves ``a1, a2`` (both on the first branch vertex), the inner
  chain vertices, then leaves ``a3, a4`` (on the last branch vertex).
* ``A[n]``: the path from one end to the other.
* ``D[n]``: the long arm from its free end (branch vertex omitted), then the
  two short leaves.
* ``E[n]``: the leaf of the short arm, the middle arm outwards, then the
  long arm outwards.

LaTeX macro spellings (``\\AA``, ``\\A``, ``\\(1x2)``, ``$``, ``\\GRAPH``) are
accepted by the parser.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product
from typing import Dict, List, Optional, Sequence, Tuple

from .graphs import DynkinType, Multigraph, affine_subgraphs, dynkin_classify


class EncodingError(ValueError):
    def __init__(self, message: str, text: str = "", pos: Optional[int] = None):
        self.pos = pos
        if pos is not None:
            self.line = text.count("\n", 0, pos) + 1
            self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"{message} at line {self.line}, column {self.column}"
        else:
            self.line = self.column = None
        super().__init__(message)


# ---------------------------------------------------------------------------
# standard shapes


@dataclass(frozen=True)
class Shape:
    kind: str          # AA, DD, A, D, E
    rank: int
    n: int
    edges: Tuple[Tuple[int, int, int], ...]
    order: Tuple[int, ...]  # vertices carrying a group, in print order

    def need(self, v: int) -> int:
        return 3 - sum(m for a, b, m in self.edges if v in (a, b))

    @property
    def graph(self) -> Multigraph:
        return Multigraph(self.n, self.edges)


def shape(kind: str, rank: int) -> Shape:
    if kind == "AA":
        if rank < 1:
            raise ValueError("AA needs rank >= 1")
        if rank == 1:
            edges = ((0, 1, 2),)
        else:
            edges = tuple((i, (i + 1) % (rank + 1), 1) for i in range(rank + 1))
        return Shape(kind, rank, rank + 1, edges, tuple(range(rank + 1)))
    if kind == "A":
        if rank < 1:
            raise ValueError("A needs rank >= 1")
        edges = tuple((i, i + 1, 1) for i in range(rank - 1))
        return Shape(kind, rank, rank, edges, tuple(range(rank)))
    if kind == "DD":
        if rank < 4:
            raise ValueError("DD needs rank >= 4")
        # leaves 0..3, chain 4..rank
        chain = list(range(4, rank + 1))
        edges = [(0, chain[0], 1), (1, chain[0], 1), (2, chain[-1], 1), (3, chain[-1], 1)]
        edges += [(chain[i], chain[i + 1], 1) for i in range(len(chain) - 1)]
        order = (0, 1) + tuple(chain[1:-1]) + (2, 3)
        return Shape(kind, rank, rank + 1, tuple(edges), order)
    if kind == "D":
        if rank < 4:
            raise ValueError("D needs rank >= 4")
        # long arm 0..rank-3 (branch vertex rank-3), leaves rank-2, rank-1
        edges = [(i, i + 1, 1) for i in range(rank - 3)]
        edges += [(rank - 3, rank - 2, 1), (rank - 3, rank - 1, 1)]
        order = tuple(range(rank - 3)) + (rank - 2, rank - 1)
        return Shape(kind, rank, rank, tuple(edges), order)
    if kind == "E":
        if rank not in (6, 7, 8):
            raise ValueError("E needs rank 6, 7 or 8")
        # branch 0; short arm 1; middle arm 2-3; long arm 4..
        edges = [(0, 1, 1), (0, 2, 1), (2, 3, 1), (0, 4, 1)]
        edges += [(v, v + 1, 1) for v in range(4, rank - 1)]
        order = (1, 2, 3) + tuple(range(4, rank))
        return Shape(kind, rank, rank, tuple(edges), order)
    raise ValueError(f"unknown fibre kind {kind!r}")


def _kind_of(t: DynkinType) -> Tuple[str, int]:
    if t.affine:
        if t.letter not in "AD":
            raise ValueError(f"no encoding for affine fibre {t}")
        return t.letter * 2, t.rank
    return t.letter, t.rank


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(?P<fib>AA|DD|A|D|E)\[(?P<rank>\d+)\]\(|\((?P<i>\d+)x(?P<j>\d+)\))")


def _clean(text: str) -> Tuple[str, List[int]]:
    """Drop LaTeX decoration, keeping a map back to the original offsets."""
    out, where = [], []
    i = 0
    while i < len(text):
        if text.startswith("\\GRAPH", i):
            i += 6
            continue
        if text[i] in "\\$":
            i += 1
            continue
        out.append(text[i])
        where.append(i)
        i += 1
    where.append(len(text))
    return "".join(out), where


@dataclass
class ParsedTerm:
    kind: str
    rank: int
    groups: List[List[int]]


def parse_terms(text: str) -> Tuple[List[ParsedTerm], List[Tuple[int, int]]]:
    s, where = _clean(text)
    pos = 0
    terms: List[ParsedTerm] = []
    inters: List[Tuple[int, int]] = []

    def fail(msg, p):
        raise EncodingError(msg, text, where[min(p, len(where) - 1)])

    while True:
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        m = _TOKEN.match(s, pos)
        if not m:
            fail("unexpected input", pos)
        if m.group("fib"):
            pos = m.end()
            close = s.find(")", pos)
            if close < 0:
                fail("unterminated fibre term", pos)
            body = s[pos:close]
            groups = []
            off = pos
            for part in body.split(";"):
                items = []
                for item in part.split(","):
                    item_s = item.strip()
                    if not item_s.isdigit():
                        fail("expected a section number", off)
                    items.append(int(item_s))
                    off += len(item) + 1
                groups.append(items)
            terms.append(ParsedTerm(m.group("fib"), int(m.group("rank")), groups))
            pos = close + 1
        else:
            inters.append((int(m.group("i")), int(m.group("j"))))
            pos = m.end()
    if not terms and not inters:
        raise EncodingError("empty encoding", text, where[0] if where else 0)
    return terms, inters


def parse_encoding(text: str) -> Multigraph:
    """Graph described by ``text``; fibre vertices first, then sections."""
    terms, inters = parse_terms(text)
    edges: List[Tuple[int, int, int]] = []
    incid: List[Tuple[int, int]] = []  # (fibre vertex, section number)
    nv = 0
    for t in terms:
        try:
            sh = shape(t.kind, t.rank)
        except ValueError as e:
            raise EncodingError(str(e)) from None
        if len(t.groups) != len(sh.order):
            raise EncodingError(f"{t.kind}[{t.rank}] expects {len(sh.order)} groups, got {len(t.groups)}")
        for a, b, m in sh.edges:
            edges.append((nv + a, nv + b, m))
        for v, grp in zip(sh.order, t.groups):
            if len(grp) != sh.need(v):
                raise EncodingError(f"{t.kind}[{t.rank}]: vertex needs {sh.need(v)} sections, got {len(grp)}")
            for s_ in grp:
                incid.append((nv + v, s_))
        nv += sh.n
    numbers = [s_ for _, s_ in incid] + [x for p in inters for x in p]
    if min(numbers) < 1:
        raise EncodingError("section numbers start at 1")
    # without fibre terms the sections are defined by the intersection terms
    nsec = max(s_ for _, s_ in incid) if incid else max(numbers)
    over = sorted({x for p in inters for x in p if x > nsec})
    if over:
        raise EncodingError(f"section numbers {over} exceed the {nsec} sections")
    missing = set(range(1, nsec + 1)) - set(numbers)
    if missing:
        raise EncodingError(f"sections never used: {sorted(missing)}")
    for v, s_ in incid:
        edges.append((v, nv + s_ - 1, 1))
    for i, j in inters:
        if i == j:
            raise EncodingError(f"self intersection ({i}x{j})")
        edges.append((nv + i - 1, nv + j - 1, 1))
    g = Multigraph(nv + nsec, edges)
    bad = [v for v in range(g.n) if g.degree(v) != 3]
    if bad:
        raise EncodingError(f"vertices {bad} are not trivalent")
    return g


# ---------------------------------------------------------------------------
# printer


def _embeddings(pattern: Multigraph, target: Multigraph, targets: Sequence[int]) -> List[Tuple[int, ...]]:
    """Isomorphisms of ``pattern`` onto the induced subgraph on ``targets``."""
    n = pattern.n
    out = []
    img = [None] * n
    used = set()

    def rec(i):
        if i == n:
            out.append(tuple(img))
            return
        for t in targets:
            if t in used:
                continue
            if any(pattern.mult(i, j) != target.mult(t, img[j]) for j in range(i)):
                continue
            img[i] = t
            used.add(t)
            rec(i + 1)
            used.discard(t)
        img[i] = None

    rec(0)
    return out


def _fiber_text(kind: str, rank: int, groups: Sequence[Sequence[int]]) -> str:
    body = ";".join(",".join(str(x) for x in grp) for grp in groups)
    return f"{kind}[{rank}]({body})"


def _groups(g: Multigraph, sh: Shape, emb: Sequence[int], secs: set) -> List[List[int]]:
    out = []
    for v in sh.order:
        u = emb[v]
        out.append([w for w in sorted(g.adj[u]) if w in secs for _ in range(g.adj[u][w])])
    return out


def _fiber_sort_key(kind: str, rank: int, text: str):
    affine = kind in ("AA", "DD")
    return (0 if affine else 1, -rank if not affine else rank, text)


def print_encoding(g: Multigraph) -> str:
    """Canonical encoding: the least string over all admissible choices of
    ``Phi``, its orientation and the numbering of sections."""
    best = None
    phis = []
    for mu in range(1, g.n):
        cands = affine_subgraphs(g, mu)
        if cands:
            letter = min("ADE".index(t.letter) for t, _ in cands)
            phis = [(t, vs) for t, vs in cands if "ADE".index(t.letter) == letter]
            break
    if not phis:
        return _print_sections_only(g)
    for t, phi in phis:
        kind, rank = _kind_of(t)
        sh = shape(kind, rank)
        phiset = set(phi)
        secs = {w for v in phi for w in g.adj[v] if w not in phiset}
        rest = [v for v in range(g.n) if v not in phiset and v not in secs]
        comps = g.components(rest)
        comp_info = []
        for comp in comps:
            ct, _ = dynkin_classify(g.induced(comp))
            if ct is None:
                raise ValueError("graph does not split into fibres")
            ck, cr = _kind_of(ct)
            csh = shape(ck, cr)
            comp_info.append((ck, cr, csh, _embeddings(csh.graph, g, comp)))
        for emb in _embeddings(sh.graph, g, phi):
            raw = _groups(g, sh, emb, secs)
            for orders in product(*[sorted(set(permutations(grp))) for grp in raw]):
                number: Dict[int, int] = {}
                for grp in orders:
                    for w in grp:
                        number.setdefault(w, len(number) + 1)
                if len(number) != len(secs):
                    continue
                head = _fiber_text(kind, rank, [[number[w] for w in grp] for grp in orders])
                others = []
                for ck, cr, csh, embs in comp_info:
                    texts = []
                    for e in embs:
                        grps = [sorted(number[w] for w in grp) for grp in _groups(g, csh, e, secs)]
                        texts.append(_fiber_text(ck, cr, grps))
                    txt = min(texts)
                    others.append((_fiber_sort_key(ck, cr, txt), txt))
                others.sort()
                pairs = []
                for u in secs:
                    for w, m in g.adj[u].items():
                        if w in secs and number[u] < number[w]:
                            pairs += [(number[u], number[w])] * m
                pairs.sort()
                text = " ".join([head] + [o for _, o in others])
                if pairs:
                    text += " " + "".join(f"({a}x{b})" for a, b in pairs)
                if best is None or (len(text), text) < (len(best), best):
                    best = text
    return best


def _print_sections_only(g: Multigraph) -> str:
    if g.n > 8:
        raise ValueError("graph without affine subgraph is too large to encode")
    best = None
    for perm in permutations(range(g.n)):
        pairs = sorted((min(perm[u], perm[w]) + 1, max(perm[u], perm[w]) + 1)
                       for u, w, m in g.edges() for _ in range(m))
        text = "".join(f"({a}x{b})" for a, b in pairs)
        if best is None or text < best:
            best = text
    return best
