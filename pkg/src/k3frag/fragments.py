"""Enumeration of h-fragments.

A fragment of degree ``2d`` is a 3-regular graph on ``2d`` vertices whose
Fano lattice is 2-subgeometric. The enumeration fixes a minimal affine
subgraph ``Phi`` (a shortest cycle, or an affine ``D5`` when the girth is at
least 7), distributes sections over its outgoing valences and then fills in
the remaining components, each of which is an (affine) Dynkin diagram.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .fano import fano_lattice, NotHyperbolic
from .graphs import DynkinType, Multigraph, canonical_form, girth
from .lattice import is_subgeometric

log = logging.getLogger(__name__)

MULTISECTION_MAX_DEGREE = 8
MAX_FRAGMENT_DEGREE = 30


# ---------------------------------------------------------------------------
# fibre shapes


@dataclass(frozen=True)
class FiberShape:
    dtype: DynkinType
    n: int
    edges: Tuple[Tuple[int, int], ...]
    kappa: Optional[Tuple[int, ...]]  # fundamental cycle for affine shapes

    @cached_property
    def need(self) -> Tuple[int, ...]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(3 - d for d in deg)

    @property
    def demand(self) -> int:
        return sum(self.need)

    @property
    def parabolic(self) -> bool:
        return self.kappa is not None

    @cached_property
    def girth(self) -> float:
        return girth(Multigraph(self.n, self.edges))


def _path(n):
    return tuple((i, i + 1) for i in range(n - 1))


def cycle_shape(n: int) -> FiberShape:
    return FiberShape(DynkinType("A", n - 1, True), n,
                      tuple((i, (i + 1) % n) for i in range(n)), (1,) * n)


def affine_d5_shape() -> FiberShape:
    # leaves 0, 1 on centre 4; leaves 2, 3 on centre 5
    return FiberShape(DynkinType("D", 5, True), 6,
                      ((0, 4), (1, 4), (4, 5), (2, 5), (3, 5)), (1, 1, 1, 1, 2, 2))


def _elliptic_shapes(max_size: int) -> List[FiberShape]:
    out = []
    for mu in range(1, max_size + 1):
        out.append(FiberShape(DynkinType("A", mu, False), mu, _path(mu), None))
    for mu in range(4, max_size + 1):
        # long arm 0..mu-3 ending at the branch vertex mu-3, short leaves mu-2, mu-1
        edges = _path(mu - 2) + ((mu - 3, mu - 2), (mu - 3, mu - 1))
        out.append(FiberShape(DynkinType("D", mu, False), mu, edges, None))
    for mu in (6, 7, 8):
        if mu <= max_size:
            # arms of lengths 1, 2, mu-4 from branch vertex 0
            edges = [(0, 1), (0, 2), (2, 3), (0, 4)]
            prev = 4
            for v in range(5, mu):
                edges.append((prev, v))
                prev = v
            out.append(FiberShape(DynkinType("E", mu, False), mu, tuple(edges), None))
    return out


def fiber_shapes(slots: int, min_girth: int) -> Tuple[List[FiberShape], List[FiberShape]]:
    """Parabolic and elliptic component shapes compatible with ``slots``.

    A parabolic component ``F`` must satisfy ``sum kappa_v * need_v = slots``
    (each section meets it with the same multiplicity as ``Phi``); an
    elliptic component of ``k`` vertices needs ``k + 2`` section incidences,
    at most ``slots`` in total.
    """
    parabolic = []
    for shape in [cycle_shape(n) for n in range(3, slots + 2)] + [affine_d5_shape()]:
        if shape.girth < min_girth:
            continue
        if sum(k * nd for k, nd in zip(shape.kappa, shape.need)) == slots:
            parabolic.append(shape)
    elliptic = [s for s in _elliptic_shapes(max(slots - 2, 0)) if s.demand <= slots]
    return parabolic, elliptic


# ---------------------------------------------------------------------------
# partial graphs


class _Builder:
    """Mutable simple graph with degree bookkeeping."""

    def __init__(self, n: int = 0):
        self.adj: List[set] = [set() for _ in range(n)]
        self.role: List[str] = []

    def add_vertices(self, k: int, role: str) -> List[int]:
        start = len(self.adj)
        for _ in range(k):
            self.adj.append(set())
            self.role.append(role)
        return list(range(start, start + k))

    def add_edge(self, u: int, v: int):
        self.adj[u].add(v)
        self.adj[v].add(u)

    def remove_edge(self, u: int, v: int):
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def dist_at_least(self, u: int, v: int, bound: int) -> bool:
        """True when the distance from ``u`` to ``v`` is at least ``bound``."""
        if bound <= 1:
            return u != v or bound <= 0
        seen = {u}
        frontier = [u]
        for _ in range(bound - 1):
            nxt = []
            for x in frontier:
                for y in self.adj[x]:
                    if y == v:
                        return False
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
            if not frontier:
                break
        return True

    def copy(self) -> "_Builder":
        b = _Builder()
        b.adj = [set(a) for a in self.adj]
        b.role = list(self.role)
        return b

    def graph(self) -> Multigraph:
        return Multigraph(len(self.adj), [(u, v) for u in range(len(self.adj)) for v in self.adj[u] if u < v])

    def key(self) -> Tuple:
        g = self.graph()
        colors = [(r, 3 - len(self.adj[v])) for v, r in enumerate(self.role)]
        return canonical_form(g, colors).certificate


# ---------------------------------------------------------------------------
# the search


def _section_patterns(phi_slots: List[int], phi_dist, min_girth: int, allow_multi: bool):
    """Ways to group the outgoing slots of ``Phi`` into sections.

    ``phi_slots`` lists the ``Phi`` vertex of each slot. Returns lists of
    slot groups; each group is one section.
    """
    slots = list(range(len(phi_slots)))
    out = []

    def rec(remaining, groups):
        if not remaining:
            out.append([tuple(g) for g in groups])
            return
        first = remaining[0]
        rest = remaining[1:]
        options = [()]
        if allow_multi:
            for k in (1, 2):
                for combo in combinations(rest, k):
                    options.append(combo)
        for combo in options:
            grp = (first,) + combo
            verts = [phi_slots[s] for s in grp]
            if len(set(verts)) != len(verts):
                continue
            # a section meeting two Phi vertices closes a cycle through Phi
            ok = all(phi_dist[a][b] + 2 >= min_girth for a, b in combinations(verts, 2))
            if not ok:
                continue
            rec([s for s in rest if s not in combo], groups + [grp])

    rec(slots, [])
    return out


def _fiber_multisets(shapes: List[FiberShape], size: int, budget: int) -> Iterator[Tuple[FiberShape, ...]]:
    """Multisets of shapes with total size ``size`` and demand within
    ``budget`` of the same parity."""

    def rec(start, size_left, demand_left, chosen):
        if size_left == 0:
            if demand_left >= 0 and demand_left % 2 == 0:
                yield tuple(chosen)
            return
        for i in range(start, len(shapes)):
            s = shapes[i]
            if s.n <= size_left and s.demand <= demand_left:
                yield from rec(i, size_left - s.n, demand_left - s.demand, chosen + [s])

    yield from rec(0, size, budget, [])


def _taxonomy_graphs(degree: int, phi: str) -> Iterator[Multigraph]:
    """Cubic graphs on ``degree`` vertices built around ``phi``.

    ``phi`` is ``"C3"``..``"C6"`` (shortest cycle of that length) or ``"D5"``
    (affine ``D5``, girth at least 7).
    """
    b = _Builder()
    if phi.startswith("C"):
        g = int(phi[1:])
        pv = b.add_vertices(g, "phi")
        for i in range(g):
            b.add_edge(pv[i], pv[(i + 1) % g])
        phi_slots = list(pv)
        min_girth = g
        dist = {a: {c: min(abs(a - c), g - abs(a - c)) for c in pv} for a in pv}
    else:
        pv = b.add_vertices(6, "phi")
        for x, y in affine_d5_shape().edges:
            b.add_edge(pv[x], pv[y])
        phi_slots = [pv[0], pv[0], pv[1], pv[1], pv[2], pv[2], pv[3], pv[3]]
        min_girth = 7
        dist = {a: {c: 0 for c in pv} for a in pv}
        for a in pv:
            d = _bfs(b, a)
            for c in pv:
                dist[a][c] = d[c]
    allow_multi = degree <= MULTISECTION_MAX_DEGREE
    slots = len(phi_slots)
    parabolic, elliptic = fiber_shapes(slots, min_girth)
    shapes = parabolic + elliptic
    seen_final = set()
    for pattern in _section_patterns(phi_slots, dist, min_girth, allow_multi):
        k = len(pattern)
        rest = degree - len(pv) - k
        if rest < 0:
            continue
        mults = [len(grp) for grp in pattern]
        budget = sum(3 - m for m in mults)
        base = b.copy()
        secs = base.add_vertices(k, "sec")
        for s, grp in zip(secs, pattern):
            for slot in grp:
                base.add_edge(s, phi_slots[slot])
        if min_girth > 3 and not _girth_ok(base, min_girth):
            continue
        for fibers in _fiber_multisets(shapes, rest, budget):
            for gr in _place_fibers(base, secs, mults, fibers, min_girth):
                key = gr.canonical.certificate
                if key not in seen_final:
                    seen_final.add(key)
                    yield gr


def _bfs(b: _Builder, s: int) -> Dict[int, int]:
    dist = {s: 0}
    q = [s]
    for v in q:
        for w in b.adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def _girth_ok(b: _Builder, g: int) -> bool:
    return girth(b.graph()) >= g


def _place_fibers(base: _Builder, secs: List[int], mults: List[int],
                  fibers: Sequence[FiberShape], min_girth: int) -> Iterator[Multigraph]:
    # parabolic components first, then elliptic ones by decreasing demand
    order = sorted(fibers, key=lambda s: (not s.parabolic, -s.demand, str(s.dtype)))
    states = {base.key(): base}
    for shape in order:
        nxt = {}
        for st in states.values():
            for new in _place_one(st, secs, mults, shape, min_girth):
                key = new.key()
                if key not in nxt:
                    nxt[key] = new
        states = nxt
        if not states:
            return
    for st in states.values():
        for done in _close_sections(st, secs, min_girth):
            yield done.graph()


def _place_one(st: _Builder, secs: List[int], mults: List[int], shape: FiberShape,
               min_girth: int) -> Iterator[_Builder]:
    b = st.copy()
    fv = b.add_vertices(shape.n, "fib")
    for x, y in shape.edges:
        b.add_edge(fv[x], fv[y])
    use = {s: 0 for s in secs}          # incidences of this component per section
    mult = dict(zip(secs, mults))
    weight = shape.kappa
    order = list(range(shape.n))

    def cap(s):
        return 3 - len(b.adj[s])

    def rec(idx):
        if idx == len(order):
            if shape.parabolic:
                if any(use[s] != mult[s] for s in secs):
                    return
            yield b.copy()
            return
        v = order[idx]
        need = shape.need[v]
        w = weight[v] if weight else 1
        cands = [s for s in secs if cap(s) > 0 and use[s] + w <= mult[s]]
        for combo in combinations(cands, need):
            added = []
            ok = True
            for s in combo:
                if not b.dist_at_least(fv[v], s, min_girth - 1):
                    ok = False
                    break
                b.add_edge(fv[v], s)
                use[s] += w
                added.append(s)
            if ok:
                yield from rec(idx + 1)
            for s in added:
                b.remove_edge(fv[v], s)
                use[s] -= w

    yield from rec(0)


def _close_sections(st: _Builder, secs: List[int], min_girth: int) -> Iterator[_Builder]:
    b = st.copy()

    def rec():
        open_ = [s for s in secs if len(b.adj[s]) < 3]
        if not open_:
            yield b.copy()
            return
        s = open_[0]
        for t in open_[1:]:
            if t in b.adj[s]:
                continue
            if not b.dist_at_least(s, t, min_girth - 1):
                continue
            b.add_edge(s, t)
            yield from rec()
            b.remove_edge(s, t)

    yield from rec()


def degree_two_fragment() -> Multigraph:
    """Two lines meeting with multiplicity three."""
    return Multigraph(2, [(0, 1, 3)])


def candidate_graphs(degree: int) -> List[Multigraph]:
    """Cubic graphs passing the combinatorial constraints (before the
    lattice test), one per isomorphism class."""
    if degree == 2:
        return [degree_two_fragment()]
    if degree % 2 or degree < 2:
        return []
    found = {}
    for phi in ("C3", "C4", "C5", "C6", "D5"):
        for gr in _taxonomy_graphs(degree, phi):
            found.setdefault(gr.canonical.certificate, gr)
    return list(found.values())


# ---------------------------------------------------------------------------
# catalogue entries


@dataclass(eq=False)
class HFragment:
    graph: Multigraph
    degree: int
    name: str = ""

    @cached_property
    def key(self) -> Tuple:
        return self.graph.canonical.certificate

    @cached_property
    def rank(self) -> int:
        return fano_lattice(self.graph, self.degree).rank

    @cached_property
    def girth(self) -> int:
        g = girth(self.graph)
        return int(g)

    @cached_property
    def aut_order(self) -> int:
        return self.graph.canonical.aut_order

    @property
    def triple(self) -> Tuple[int, int, int]:
        return (self.rank, self.girth, self.aut_order)

    @cached_property
    def encoding(self) -> str:
        from .encoding import print_encoding

        return print_encoding(self.graph)


def is_fragment(g: Multigraph, degree: int, m: int = 2) -> bool:
    if g.n != degree or not g.is_regular(3) or not g.is_connected():
        return False
    try:
        fl = fano_lattice(g, degree)
    except NotHyperbolic:
        return False
    return is_subgeometric(fl.lattice, m)


def enumerate_fragments(degree: int, name_with=None) -> List[HFragment]:
    """All fragments of the given degree, sorted by ``(rank, girth, |Aut|)``.

    ``name_with`` optionally maps canonical keys to preferred names.
    """
    frags = [HFragment(g, degree) for g in candidate_graphs(degree) if is_fragment(g, degree)]
    frags.sort(key=lambda f: (f.triple, f.key))
    for i, f in enumerate(frags, 1):
        f.name = f"H{i}"
    if name_with:
        for f in frags:
            if f.key in name_with:
                f.name = name_with[f.key]
        frags.sort(key=lambda f: (int(f.name[1:]) if f.name[1:].isdigit() else 10 ** 6, f.triple))
    return frags
