"""Search for h-configurations.

Below the rank threshold ``r_min`` a search state is the h-part of a
saturated graph and grows by gluing a whole fragment; from ``r_min`` on a
state is a saturated graph and grows by one line at a time. Every state that
admits a geometric finite index extension contributes the h-parts of the
corresponding saturations to the output.
"""

from __future__ import annotations

import hashlib
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import exact
from .encoding import parse_encoding
from .expected import ENCODINGS
from .fano import NotHyperbolic, fano_lattice, find_fragments, graph_on
from .fragments import HFragment, enumerate_fragments
from .graphs import Multigraph
from .lattice import (
    PolarizedLattice,
    Vector,
    admissibility_witness,
    extension,
    geometric_extensions,
    lines as lattice_lines,
)

log = logging.getLogger(__name__)

RANK_MAX = 20
HASH_MIN = {6: 16, 8: 9, 10: 3, 12: 2}


def default_r_min(degree: int) -> int:
    return 18 if degree <= 12 else 0


def default_hash_min(degree: int) -> int:
    return HASH_MIN.get(degree, 1)


def digest(key) -> str:
    return hashlib.sha256(repr(key).encode()).hexdigest()[:32]


# ---------------------------------------------------------------------------
# catalogue


@dataclass(eq=False)
class Catalogue:
    degree: int
    fragments: List[HFragment]

    @cached_property
    def index(self) -> Dict[Tuple, int]:
        return {f.key: i for i, f in enumerate(self.fragments)}

    def type_of(self, g: Multigraph) -> int:
        return self.index[g.canonical.certificate]

    def __len__(self) -> int:
        return len(self.fragments)


_CATALOGUES: Dict[int, Catalogue] = {}


def catalogue(degree: int) -> Catalogue:
    """Fragments of one degree, named and ordered as in the reference lists."""
    if degree not in _CATALOGUES:
        names = {}
        for i, text in enumerate(ENCODINGS.get(degree, ()), 1):
            names[parse_encoding(text).canonical.certificate] = f"H{i}"
        _CATALOGUES[degree] = Catalogue(degree, enumerate_fragments(degree, name_with=names))
    return _CATALOGUES[degree]


# ---------------------------------------------------------------------------
# states


@dataclass(eq=False)
class State:
    """A graph of lines together with the lattice it generates."""

    graph: Multigraph
    lattice: PolarizedLattice
    coords: List[Vector]
    fragments: List[Tuple[int, ...]]
    types: Tuple[int, ...]
    saturated: bool

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @cached_property
    def key(self) -> str:
        return ("s" if self.saturated else "h") + digest(self.graph.canonical.certificate)

    def census(self, size: int) -> Tuple[int, ...]:
        out = [0] * size
        for t in self.types:
            out[t] += 1
        return tuple(out)


def make_state(lat: PolarizedLattice, cat: Catalogue, saturated: bool) -> State:
    """All lines of ``lat`` (``saturated``) or only those in fragments."""
    ls = sorted(lattice_lines(lat))
    g = graph_on(lat, ls)
    frags = find_fragments(g, cat.degree)
    if not saturated:
        keep = sorted({v for f in frags for v in f})
        pos = {v: i for i, v in enumerate(keep)}
        g = g.induced(keep)
        ls = [ls[v] for v in keep]
        frags = [tuple(pos[v] for v in f) for f in frags]
    types = tuple(cat.type_of(g.induced(f)) for f in frags)
    return State(g, lat, ls, frags, types, saturated)


def _independent_rows(vectors: Sequence[Sequence[int]], order: Iterable[int], rank: int) -> List[int]:
    chosen: List[int] = []
    echelon: List[Tuple[int, List[mpq]]] = []
    for i in order:
        row = [mpq(x) for x in vectors[i]]
        for piv, erow in echelon:
            if row[piv]:
                f = row[piv] / erow[piv]
                row = [a - f * b for a, b in zip(row, erow)]
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is not None:
            echelon.append((piv, row))
            chosen.append(i)
            if len(chosen) == rank:
                break
    return chosen


@dataclass(eq=False)
class PairingSystem:
    """Pairings of a new vector with the lines of a state.

    Rows are ``h`` followed by independent lines; ``expr[v]`` expresses the
    pairing with line ``v`` as a rational combination of the row values.
    """

    rows: List[int]            # line indices; row 0 is h
    expr: List[List[Tuple[int, mpq]]]
    depth: List[int]
    ainv: List[List[mpq]]
    ginv: List[List[mpq]]

    def pairing_vector(self, values: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """``y`` with ``y_i = x . e_i`` from row values, if integral."""
        y = []
        for row in self.ainv:
            s = sum((a * v for a, v in zip(row, values) if v), mpq(0))
            if s.denominator != 1:
                return None
            y.append(int(s))
        return tuple(y)

    def norm_in(self, y: Sequence[int]) -> mpq:
        w = exact.matvec(self.ginv, y)
        return sum((a * b for a, b in zip(y, w)), mpq(0))


def pairing_system(state: State, prefer: Sequence[int] = ()) -> PairingSystem:
    r = state.rank
    vecs = [state.lattice.h] + list(state.coords)
    order = [0] + [v + 1 for v in prefer] + [v + 1 for v in range(len(state.coords)) if v not in set(prefer)]
    chosen = _independent_rows(vecs, order, r)
    if len(chosen) != r:
        raise ValueError("lines and h do not span the lattice")
    a = [list(vecs[i]) for i in chosen]
    ainv = exact.rational_inverse(a)
    expr = []
    depth = []
    for c in state.coords:
        lam = [sum((mpq(c[i]) * ainv[i][j] for i in range(r)), mpq(0)) for j in range(r)]
        nz = [(j, x) for j, x in enumerate(lam) if x]
        expr.append(nz)
        depth.append(max(j for j, _ in nz))
    return PairingSystem([i - 1 for i in chosen], expr, depth, ainv,
                         exact.rational_inverse(state.lattice.gram))


def _orbit_reps(sets: List[Tuple[int, ...]], generators) -> List[int]:
    """Indices of one representative per orbit of vertex sets."""
    index = {s: i for i, s in enumerate(sets)}
    seen = [False] * len(sets)
    reps = []
    for i, s in enumerate(sets):
        if seen[i]:
            continue
        reps.append(i)
        seen[i] = True
        queue = [s]
        while queue:
            cur = queue.pop()
            for gen in generators:
                img = tuple(sorted(gen[v] for v in cur))
                j = index.get(img)
                if j is not None and not seen[j]:
                    seen[j] = True
                    queue.append(img)
    return reps


# ---------------------------------------------------------------------------
# vertex mode


@dataclass(frozen=True)
class NewLine:
    """A candidate line outside ``M (x) Q``: its neighbours and pairings."""

    neighbours: Tuple[int, ...]
    y: Tuple[int, ...]
    norm: mpq


def new_lines(state: State) -> List[NewLine]:
    """Lines ``x`` with ``x.l in {0,1}`` for every line ``l`` and ``x_M^2 > -2``."""
    if state.rank >= RANK_MAX:
        return []
    frag_vertices = sorted({v for f in state.fragments for v in f})
    ps = pairing_system(state, frag_vertices)
    r = state.rank
    n = len(state.coords)
    row_of = {v: j for j, v in enumerate(ps.rows) if j}
    at_depth: List[List[int]] = [[] for _ in range(r)]
    for v in range(n):
        if v not in row_of:
            at_depth[ps.depth[v]].append(v)
    frag_of: List[List[int]] = [[] for _ in range(n)]
    for i, f in enumerate(state.fragments):
        for v in f:
            frag_of[v].append(i)
    hits = [0] * len(state.fragments)
    vals = [0] * r
    vals[0] = 1
    line_val = [0] * n
    out: List[NewLine] = []

    def mark(v: int, s: int) -> bool:
        line_val[v] = s
        if s:
            ok = True
            for f in frag_of[v]:
                hits[f] += 1
                if hits[f] > 1:
                    ok = False
            return ok
        return True

    def unmark(v: int):
        if line_val[v]:
            for f in frag_of[v]:
                hits[f] -= 1
        line_val[v] = 0

    def rec(j: int):
        if j == r:
            y = ps.pairing_vector(vals)
            if y is None:
                return
            norm = ps.norm_in(y)
            if norm <= -2:
                return
            out.append(NewLine(tuple(v for v in range(n) if line_val[v]), y, norm))
            return
        for val in (0, 1):
            vals[j] = val
            done = []
            ok = mark(ps.rows[j], val)
            done.append(ps.rows[j])
            if ok:
                for v in at_depth[j]:
                    s = sum((x * vals[i] for i, x in ps.expr[v] if vals[i]), mpq(0))
                    if s != 0 and s != 1:
                        ok = False
                        break
                    ok = mark(v, int(s))
                    done.append(v)
                    if not ok:
                        break
            if ok:
                rec(j + 1)
            for v in done:
                unmark(v)
        vals[j] = 0

    # lines at depth 0 are determined by h alone
    for v in at_depth[0]:
        s = sum((x * vals[i] for i, x in ps.expr[v]), mpq(0))
        if s != 0 and s != 1:
            return []
        if not mark(v, int(s)):
            return []
    rec(1)
    return out


def extend_by_line(state: State, x: NewLine) -> PolarizedLattice:
    g = [list(row) + [y] for row, y in zip(state.lattice.gram, x.y)]
    g.append(list(x.y) + [-2])
    return PolarizedLattice(g, tuple(state.lattice.h) + (0,))


def vertex_children(state: State, cat: Catalogue, m: int = 2) -> List[State]:
    cands = new_lines(state)
    if not cands:
        return []
    sets = [c.neighbours for c in cands]
    reps = _orbit_reps(sets, state.graph.canonical.generators)
    out: Dict[str, State] = {}
    for i in reps:
        lat = extend_by_line(state, cands[i])
        if admissibility_witness(lat, m) is not None:
            continue
        child = make_state(lat, cat, saturated=True)
        out.setdefault(child.key, child)
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# gluing mode


@dataclass(frozen=True)
class Attachment:
    """A possible neighbourhood ``T`` of a new vertex in the state."""

    neighbours: frozenset
    y: Tuple[int, ...]
    w: Tuple[mpq, ...]          # G^{-1} y
    norm: mpq


def exact_transversals(state: State) -> List[Tuple[int, ...]]:
    """Vertex sets meeting every fragment of the state exactly once."""
    frags = state.fragments
    n = state.graph.n
    frag_of: List[List[int]] = [[] for _ in range(n)]
    for i, f in enumerate(frags):
        for v in f:
            frag_of[v].append(i)
    hit = [0] * len(frags)
    chosen: List[int] = []
    out: List[Tuple[int, ...]] = []

    def rec():
        best = None
        for fi, f in enumerate(frags):
            if hit[fi]:
                continue
            avail = [v for v in f if not any(hit[g] for g in frag_of[v])]
            if not avail:
                return
            if best is None or len(avail) < len(best):
                best = avail
        if best is None:
            out.append(tuple(sorted(chosen)))
            return
        for v in best:
            for g in frag_of[v]:
                hit[g] += 1
            chosen.append(v)
            rec()
            chosen.pop()
            for g in frag_of[v]:
                hit[g] -= 1

    rec()
    return sorted(set(out))


def attachments(state: State, m: int = 2) -> List[Attachment]:
    """Admissible neighbourhoods of one new line in the h-part of a state."""
    ps = pairing_system(state)
    r = state.rank
    n = state.graph.n
    out = []
    for t in exact_transversals(state):
        ts = set(t)
        vals = [1] + [1 if v in ts else 0 for v in ps.rows[1:]]
        y = ps.pairing_vector(vals)
        if y is None:
            continue
        ok = True
        for v in range(n):
            s = sum((x * vals[i] for i, x in ps.expr[v] if vals[i]), mpq(0))
            if s != (1 if v in ts else 0):
                ok = False
                break
        if not ok:
            continue
        w = tuple(exact.matvec(ps.ginv, y))
        norm = sum((a * b for a, b in zip(y, w)), mpq(0))
        if norm < -2:
            continue
        if norm == -2:
            try:
                lat, _ = extension(state.lattice, [w])
            except ValueError:
                continue
        else:
            if r >= RANK_MAX:
                continue
            lat = extend_by_line(state, NewLine(t, y, norm))
        if admissibility_witness(lat, m) is not None:
            continue
        out.append(Attachment(frozenset(t), y, w, norm))
    return out


def _bfs_order(g: Multigraph, root: int = 0) -> List[int]:
    seen = [False] * g.n
    order = []
    for s in [root] + list(range(g.n)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


@dataclass
class Gluing:
    """Result of gluing a fragment ``H`` to a state.

    ``phi[a]`` is the state vertex of ``a`` in the intersection, or ``None``;
    ``attach[a]`` is the neighbourhood of a new vertex ``a`` in the state.
    """

    phi: List[Optional[int]]
    attach: List[Optional[frozenset]]
    graph: Multigraph


def gluings(state: State, frag: Multigraph, atts: Optional[List[Attachment]] = None,
            rank_room: Optional[int] = None, node_limit: Optional[int] = None,
            anchor: Optional[Tuple[int, int]] = None,
            rank_increase: bool = True) -> List[Gluing]:
    """All ways to add a copy of ``frag`` meeting the state along an induced subgraph.

    Necessary conditions enforced during the search: the intersection is
    induced on both sides, every state vertex outside it has exactly one
    neighbour in the new copy, new vertices use admissible attachments, and
    the parts of the new vertices orthogonal to the state lattice span a
    negative semidefinite space of dimension at most ``rank_room`` (and at
    least one if ``rank_increase``).

    Symmetry is broken on the first decision only, so the result may
    contain isomorphic graphs; callers deduplicate. ``anchor = (a, v)``
    restricts to gluings with vertex ``a`` of ``frag`` identified with
    vertex ``v`` of the state.
    """
    g0 = state.graph
    n0 = g0.n
    adj0 = [set(g0.neighbors(v)) for v in range(n0)]
    if atts is None:
        atts = attachments(state)
    if rank_room is None:
        rank_room = RANK_MAX - state.rank
    k = frag.n
    adjh = [set(frag.neighbors(a)) for a in range(k)]
    att_sets = [tuple(sorted(a.neighbours)) for a in atts]
    by_vertex: List[List[int]] = [[] for _ in range(n0)]
    for i, a in enumerate(atts):
        for v in a.neighbours:
            by_vertex[v].append(i)
    gens = g0.canonical.generators
    base_cache: Dict[Tuple[int, int], mpq] = {}

    def base(i: int, j: int) -> mpq:
        key = (i, j) if i <= j else (j, i)
        val = base_cache.get(key)
        if val is None:
            val = sum((p * q for p, q in zip(atts[i].y, atts[j].w)), mpq(0))
            base_cache[key] = val
        return val

    out: List[Gluing] = []
    nodes = [0]

    def run(order: List[int], first_old: Sequence[int], first_new: Sequence[int],
            no_old: set, strict: bool):
        phi: List[Optional[int]] = [None] * k
        tix: List[Optional[int]] = [None] * k
        used = [False] * n0
        cover = [0] * n0
        basis: List[Tuple[Dict[int, mpq], mpq]] = []
        radical: List[Dict[int, mpq]] = []

        def perp(a: int, b: int) -> mpq:
            if a == b:
                c = -2
            else:
                c = 1 if b in adjh[a] else 0
            return c - base(tix[a], tix[b])

        def pair(comb: Dict[int, mpq], a: int) -> mpq:
            return sum((c * perp(b, a) for b, c in comb.items()), mpq(0))

        def push_perp(a: int) -> Optional[str]:
            for rad in radical:
                if pair(rad, a) != 0:
                    return None
            res: Dict[int, mpq] = {a: mpq(1)}
            norm = perp(a, a)
            for comb, d in basis:
                p = pair(comb, a)
                if p:
                    f = p / d
                    norm -= p * f
                    for b, c in comb.items():
                        res[b] = res.get(b, mpq(0)) - f * c
            if norm > 0:
                return None
            if norm == 0:
                radical.append(res)
                return "r"
            if len(basis) >= rank_room:
                return None
            basis.append((res, norm))
            return "b"

        def pop_perp(tag: str):
            if tag == "r":
                radical.pop()
            else:
                basis.pop()

        def old_ok(a: int, v: int, pos: int) -> bool:
            if used[v]:
                return False
            for b in order[:pos]:
                nb = b in adjh[a]
                if phi[b] is not None:
                    if (phi[b] in adj0[v]) != nb:
                        return False
                elif (v in atts[tix[b]].neighbours) != nb:
                    return False
            return True

        def new_ok(a: int, i: int, pos: int) -> bool:
            t = atts[i].neighbours
            if strict and any(cover[u] for u in t):
                return False
            for b in order[:pos]:
                if phi[b] is not None and (phi[b] in t) != (b in adjh[a]):
                    return False
            return True

        def rec(pos: int):
            nodes[0] += 1
            if node_limit is not None and nodes[0] > node_limit:
                raise SearchBudgetExceeded("gluing node limit")
            if pos == k:
                finish()
                return
            a = order[pos]
            if not strict:
                forced = sum(1 for u in range(n0) if not used[u] and cover[u] > 1)
                if forced > k - pos:
                    return
            if a not in no_old:
                if pos == 0:
                    olds = first_old
                else:
                    olds = None
                    for b in order[:pos]:
                        if b in adjh[a]:
                            olds = adj0[phi[b]] if phi[b] is not None else atts[tix[b]].neighbours
                            break
                    if olds is None:
                        olds = range(n0)
                for v in sorted(olds):
                    if not old_ok(a, v, pos):
                        continue
                    phi[a] = v
                    used[v] = True
                    for u in adj0[v]:
                        cover[u] += 1
                    rec(pos + 1)
                    for u in adj0[v]:
                        cover[u] -= 1
                    used[v] = False
                    phi[a] = None
            if pos == 0:
                news = first_new
            else:
                news = None
                for b in order[:pos]:
                    if b in adjh[a] and phi[b] is not None:
                        news = by_vertex[phi[b]]
                        break
                if news is None:
                    news = range(len(atts))
            for i in news:
                if not new_ok(a, i, pos):
                    continue
                tix[a] = i
                tag = push_perp(a)
                if tag is not None:
                    for u in atts[i].neighbours:
                        cover[u] += 1
                    rec(pos + 1)
                    for u in atts[i].neighbours:
                        cover[u] -= 1
                    pop_perp(tag)
                tix[a] = None

        def finish():
            if rank_increase and not basis:
                return
            for u in range(n0):
                if not used[u] and cover[u] != 1:
                    return
            new = [a for a in range(k) if phi[a] is None]
            index = {a: n0 + i for i, a in enumerate(new)}
            adj = [dict((w, 1) for w in adj0[v]) for v in range(n0)] + [dict() for _ in new]
            for a in new:
                x = index[a]
                for u in atts[tix[a]].neighbours:
                    adj[x][u] = 1
                    adj[u][x] = 1
                for b in adjh[a]:
                    if phi[b] is None:
                        adj[x][index[b]] = 1
            out.append(Gluing(list(phi), [atts[tix[a]].neighbours if phi[a] is None else None
                                           for a in range(k)], Multigraph.from_adjacency(adj)))

        rec(0)

    if anchor is not None:
        a, v = anchor
        run(_bfs_order(frag, a), [v], [], set(), False)
        return out
    all_new = set(range(k))
    run(_bfs_order(frag, 0), [], _orbit_reps(att_sets, gens), all_new, True)
    first_old = sorted({min(o) for o in _vertex_orbits(n0, gens)})
    earlier: set = set()
    for orbit in sorted(_vertex_orbits(k, frag.canonical.generators)):
        r = min(orbit)
        run(_bfs_order(frag, r), first_old, [], set(earlier), False)
        earlier.update(orbit)
    return out


def _vertex_orbits(n: int, generators) -> List[List[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in generators:
        for v in range(n):
            a, b = find(v), find(gen[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: Dict[int, List[int]] = {}
    for v in range(n):
        orbits.setdefault(find(v), []).append(v)
    return list(orbits.values())


def meeting_filter(degree: int, state: State, frag_type: int, glue: Gluing) -> bool:
    """Degree specific restrictions on how two fragments may meet.

    Degree 6: two copies of the first fragment meet in nothing or in a
    common triangle. Degree 8: two copies of the third fragment never share
    exactly one vertex.
    """
    image = {v for v in glue.phi if v is not None}
    if degree == 6 and frag_type == 0:
        g0 = state.graph
        for f, t in zip(state.fragments, state.types):
            if t != 0:
                continue
            common = image & set(f)
            if not common:
                continue
            if len(common) != 3:
                return False
            a, b, c = sorted(common)
            if not (g0.mult(a, b) and g0.mult(b, c) and g0.mult(a, c)):
                return False
    if degree == 8 and frag_type == 2:
        for f, t in zip(state.fragments, state.types):
            if t == 2 and len(image & set(f)) == 1:
                return False
    return True


def glue_children(state: State, cat: Catalogue, allowed: Sequence[int],
                  use_filters: bool = True, m: int = 2) -> List[Tuple[Multigraph, int]]:
    """Graphs ``state + H`` for every allowed fragment type ``H``, deduplicated."""
    atts = attachments(state, m)
    seen = set()
    out = []
    for t in allowed:
        frag = cat.fragments[t].graph
        for glue in gluings(state, frag, atts):
            if use_filters and not meeting_filter(cat.degree, state, t, glue):
                continue
            key = glue.graph.canonical.certificate
            if key in seen:
                continue
            seen.add(key)
            out.append((glue.graph, t))
    return out


# ---------------------------------------------------------------------------
# outputs of a state


@dataclass
class Found:
    """A geometric graph and its h-part."""

    config_key: str
    config_size: int
    hconfig: Multigraph
    hkey: str
    census: Tuple[int, ...]
    rank: int
    witness_gram: Tuple[Tuple[int, ...], ...]
    witness_h: Tuple[int, ...]
    kernel: Tuple[Tuple[str, ...], ...]


def _span_rank(vectors: Sequence[Sequence[int]]) -> int:
    return exact.rank([list(v) for v in vectors]) if vectors else 0


def state_outputs(state: State, cat: Catalogue, m: int = 2) -> Tuple[bool, List[Found]]:
    """Whether the state is subgeometric, and its geometric saturations."""
    exts = geometric_extensions(state.lattice, m)
    found = []
    for kernel, new, t in exts:
        lat = new if kernel else state.lattice
        ls = sorted(lattice_lines(lat))
        g = graph_on(lat, ls)
        frags = find_fragments(g, cat.degree)
        if not frags:
            continue
        keep = sorted({v for f in frags for v in f})
        xi = g.induced(keep)
        census = [0] * len(cat)
        for f in frags:
            census[cat.type_of(g.induced(f))] += 1
        rank = _span_rank([lat.h] + [ls[v] for v in keep])
        kvecs = ()
        if kernel:
            q = _kernel_vectors(state.lattice, kernel)
            kvecs = tuple(tuple(str(c) for c in v) for v in q)
        found.append(Found(digest(g.canonical.certificate), g.n, xi,
                           digest(xi.canonical.certificate), tuple(census), rank,
                           state.lattice.gram, state.lattice.h, kvecs))
    return bool(exts), found


def _kernel_vectors(lat: PolarizedLattice, kernel) -> List[Tuple[mpq, ...]]:
    from .lattice import discriminant_form

    q = discriminant_form(lat)
    return [q.vector(c) for c in kernel]


# ---------------------------------------------------------------------------
# driver


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass
class SearchConfig:
    degree: int
    r_min: Optional[int] = None
    hash_min: Optional[int] = None
    workers: int = 1
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None
    checkpoint: Optional[str] = None
    seed_order: Optional[Sequence[int]] = None
    use_filters: bool = True
    m: int = 2

    def __post_init__(self):
        if self.degree <= 0 or self.degree % 2:
            raise ValueError("degree must be a positive even integer")
        if self.r_min is None:
            self.r_min = default_r_min(self.degree)
        if self.hash_min is None:
            self.hash_min = default_hash_min(self.degree)
        if self.r_min < 0 or self.hash_min < 1 or self.workers < 1:
            raise ValueError("thresholds must be positive")


@dataclass
class HConfiguration:
    degree: int
    graph: Multigraph
    key: str
    census: Tuple[int, ...]
    rank: int
    aut_order: int
    witness_gram: Tuple[Tuple[int, ...], ...]
    witness_h: Tuple[int, ...]
    kernel: Tuple[Tuple[str, ...], ...]
    configurations: List[str] = field(default_factory=list)
    maximal: bool = True
    complete: bool = True

    @property
    def total(self) -> int:
        return sum(self.census)


@dataclass
class SearchResult:
    degree: int
    hconfigs: List[HConfiguration]
    complete: bool
    nodes: int
    seconds: float
    configurations: Dict[str, Tuple[str, int]] = field(default_factory=dict)

    @property
    def max_count(self) -> int:
        return max((h.total for h in self.hconfigs), default=0)


def _process(args) -> Tuple[List[Found], List[State], bool]:
    state, allowed, r_min, use_filters, m = args
    cat = catalogue(state_degree(state))
    ok, found = state_outputs(state, cat, m)
    if not ok:
        return [], [], False
    children: List[State] = []
    if state.saturated:
        children = vertex_children(state, cat, m)
    else:
        for g, _t in glue_children(state, cat, allowed, use_filters, m):
            child = state_from_graph(g, cat, r_min, m)
            if child is not None:
                children.append(child)
    return found, children, True


def state_degree(state: State) -> int:
    return state.lattice.h_norm


def state_from_graph(g: Multigraph, cat: Catalogue, r_min: int, m: int = 2) -> Optional[State]:
    try:
        fl = fano_lattice(g, cat.degree)
    except NotHyperbolic:
        return None
    if fl.rank > RANK_MAX or admissibility_witness(fl.lattice, m) is not None:
        return None
    return make_state(fl.lattice, cat, saturated=fl.rank >= r_min)


def search(cfg: SearchConfig, progress=None, resume: Optional[str] = None) -> SearchResult:
    """Enumerate h-configurations of one degree.

    Seeds are the fragment types in ``cfg.seed_order``; the run seeded by a
    type only visits states none of whose fragments has an earlier seed
    type, since those are reached from the earlier seed.

    With ``cfg.checkpoint`` the search state is written after every level;
    ``resume`` names a checkpoint to continue from.
    """
    from .records import Checkpoint, load_checkpoint, save_checkpoint

    cat = catalogue(cfg.degree)
    order = list(cfg.seed_order) if cfg.seed_order is not None else default_seed_order(cfg.degree, len(cat))
    start = time.monotonic()
    visited: set = set()
    hconfigs: Dict[str, HConfiguration] = {}
    configs: Dict[str, Tuple[str, int]] = {}
    nodes = 0
    complete = True
    first_seed = 0
    resumed: Optional[List[State]] = None
    if resume is not None:
        cp = load_checkpoint(resume)
        if cp.degree != cfg.degree:
            raise ValueError("checkpoint is for another degree")
        first_seed = cp.seed_index
        nodes = cp.nodes
        visited = set(cp.visited)
        hconfigs = {h.key: h for h in cp.hconfigs}
        configs = dict(cp.configurations)
        resumed = []
        for g in cp.frontier:
            st = state_from_graph(g, cat, cfg.r_min, cfg.m)
            if st is None:
                raise ValueError("checkpoint frontier state is not admissible")
            resumed.append(st)
        # an empty frontier means the seed at seed_index has not started
        resumed = resumed or None

    def checkpoint(si: int, frontier: List[State]):
        if cfg.checkpoint:
            save_checkpoint(cfg.checkpoint, Checkpoint(
                cfg.degree, si, nodes, list(visited), [s.graph for s in frontier],
                list(hconfigs.values()), configs,
                {"r_min": cfg.r_min, "hash_min": cfg.hash_min, "m": cfg.m}))

    pool = None
    if cfg.workers > 1:
        import multiprocessing as mp

        pool = mp.get_context("fork").Pool(cfg.workers)
    try:
        for si in range(first_seed, len(order)):
            seed = order[si]
            banned = set(order[:si])
            allowed = [t for t in range(len(cat)) if t not in banned]
            if resumed is not None:
                frontier, resumed = resumed, None
            else:
                s0 = state_from_graph(cat.fragments[seed].graph, cat, cfg.r_min, cfg.m)
                frontier = [s0] if s0 is not None and s0.key not in visited else []
                visited.update(s.key for s in frontier)
            while frontier:
                if cfg.max_nodes is not None and nodes + len(frontier) > cfg.max_nodes:
                    complete = False
                    break
                if cfg.max_seconds is not None and time.monotonic() - start > cfg.max_seconds:
                    complete = False
                    break
                jobs = [(s, allowed, cfg.r_min, cfg.use_filters, cfg.m) for s in frontier]
                results = pool.map(_process, jobs, chunksize=1) if pool else map(_process, jobs)
                nxt: Dict[str, State] = {}
                for found, children, _ok in results:
                    nodes += 1
                    for f in found:
                        _record(f, cfg, hconfigs, configs)
                    for c in children:
                        if c.key in visited or c.key in nxt:
                            continue
                        if any(t in banned for t in c.types):
                            continue
                        nxt[c.key] = c
                visited.update(nxt)
                frontier = [nxt[k] for k in sorted(nxt)]
                checkpoint(si if frontier else si + 1, frontier)
                if progress:
                    progress(seed, nodes, len(frontier), len(hconfigs))
            if not complete:
                checkpoint(si, frontier)
                break
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    out = sorted(hconfigs.values(), key=lambda h: (-h.total, h.census, h.key))
    mark_maximal(out)
    for h in out:
        h.complete = complete
        h.configurations.sort()
    return SearchResult(cfg.degree, out, complete, nodes, time.monotonic() - start, configs)


def default_seed_order(degree: int, size: int) -> List[int]:
    order = list(range(size))
    if degree == 8 and size == 3:
        order = [0, 2, 1]
    return order


def _record(f: Found, cfg: SearchConfig, hconfigs: Dict[str, HConfiguration],
            configs: Dict[str, Tuple[str, int]]):
    if f.hkey not in hconfigs:
        hconfigs[f.hkey] = HConfiguration(cfg.degree, f.hconfig, f.hkey, f.census, f.rank,
                                          f.hconfig.canonical.aut_order, f.witness_gram,
                                          f.witness_h, f.kernel)
    if sum(f.census) >= cfg.hash_min and f.config_key not in configs:
        configs[f.config_key] = (f.hkey, f.config_size)
        hconfigs[f.hkey].configurations.append(f.config_key)


def mark_maximal(hs: List[HConfiguration]):
    """Flag h-configurations that are not proper induced subgraphs of others."""
    from networkx.algorithms.isomorphism import GraphMatcher

    nx_graphs = [_to_nx(h.graph) for h in hs]
    for i, h in enumerate(hs):
        h.maximal = True
        for j, other in enumerate(hs):
            if i == j or other.graph.n <= h.graph.n:
                continue
            # an induced embedding maps fragments to fragments
            if any(a < b for a, b in zip(other.census, h.census)):
                continue
            if GraphMatcher(nx_graphs[j], nx_graphs[i]).subgraph_is_isomorphic():
                h.maximal = False
                break


def _to_nx(g: Multigraph):
    import networkx as nx

    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from((u, v) for u, v, _ in g.edges())
    return out
