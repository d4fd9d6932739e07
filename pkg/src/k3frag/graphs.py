"""Multigraphs, canonical labelling and Dynkin diagrams.

Vertices are ``0..n-1``; an edge of multiplicity ``m`` between ``u`` and
``v`` stands for intersection number ``m`` of the corresponding lines.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple


class Multigraph:
    """Undirected loopless multigraph with immutable adjacency."""

    __slots__ = ("n", "adj", "_nbr", "__dict__")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        self.n = n
        adj: List[Dict[int, int]] = [dict() for _ in range(n)]
        for e in edges:
            if len(e) == 3:
                u, v, m = e
            else:
                (u, v), m = e, 1
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u][v] = adj[u].get(v, 0) + m
            adj[v][u] = adj[v].get(u, 0) + m
        self.adj = adj
        self._nbr = [tuple(sorted(a)) for a in adj]

    @classmethod
    def from_adjacency(cls, adj: Sequence[Dict[int, int]]) -> "Multigraph":
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = [dict(a) for a in adj]
        g._nbr = [tuple(sorted(a)) for a in g.adj]
        return g

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[int]]) -> "Multigraph":
        n = len(m)
        return cls(n, [(i, j, m[i][j]) for i in range(n) for j in range(i + 1, n) if m[i][j]])

    # queries --------------------------------------------------------------
    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._nbr[v]

    def mult(self, u: int, v: int) -> int:
        return self.adj[u].get(v, 0)

    def degree(self, v: int) -> int:
        return sum(self.adj[v].values())

    def edges(self) -> List[Tuple[int, int, int]]:
        return [(u, v, m) for u in range(self.n) for v, m in self.adj[u].items() if u < v]

    @property
    def num_edges(self) -> int:
        return sum(m for _, _, m in self.edges())

    def is_simple(self) -> bool:
        return all(m == 1 for a in self.adj for m in a.values())

    def is_regular(self, k: int) -> bool:
        return all(self.degree(v) == k for v in range(self.n))

    def gram(self, diag: int = -2) -> List[List[int]]:
        n = self.n
        g = [[0] * n for _ in range(n)]
        for u in range(n):
            g[u][u] = diag
            for v, m in self.adj[u].items():
                g[u][v] = m
        return g

    def induced(self, vertices: Sequence[int]) -> "Multigraph":
        idx = {v: i for i, v in enumerate(vertices)}
        adj = [{idx[w]: m for w, m in self.adj[v].items() if w in idx} for v in vertices]
        return Multigraph.from_adjacency(adj)

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        adj: List[Dict[int, int]] = [dict() for _ in range(self.n)]
        for u in range(self.n):
            adj[perm[u]] = {perm[w]: m for w, m in self.adj[u].items()}
        return Multigraph.from_adjacency(adj)

    def add_vertex(self, neighbours: Iterable[int]) -> "Multigraph":
        adj = [dict(a) for a in self.adj]
        new = self.n
        adj.append({})
        for w in neighbours:
            adj[new][w] = adj[new].get(w, 0) + 1
            adj[w][new] = adj[w].get(new, 0) + 1
        return Multigraph.from_adjacency(adj)

    def union_disjoint(self, other: "Multigraph") -> "Multigraph":
        off = self.n
        adj = [dict(a) for a in self.adj] + [
            {w + off: m for w, m in a.items()} for a in other.adj
        ]
        return Multigraph.from_adjacency(adj)

    def components(self, vertices: Optional[Iterable[int]] = None) -> List[List[int]]:
        allowed = set(range(self.n)) if vertices is None else set(vertices)
        seen = set()
        out = []
        for s in sorted(allowed):
            if s in seen:
                continue
            comp = []
            stack = [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._nbr[v]:
                    if w in allowed and w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n == 0 or len(self.components()) == 1

    def distances_from(self, s: int, allowed=None) -> Dict[int, int]:
        dist = {s: 0}
        q = deque([s])
        while q:
            v = q.popleft()
            for w in self._nbr[v]:
                if w not in dist and (allowed is None or w in allowed):
                    dist[w] = dist[v] + 1
                    q.append(w)
        return dist

    def __eq__(self, other):
        return isinstance(other, Multigraph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, tuple(tuple(sorted(a.items())) for a in self.adj)))

    def __repr__(self):
        return f"Multigraph(n={self.n}, edges={self.edges()})"

    @cached_property
    def canonical(self) -> "CanonicalForm":
        return canonical_form(self)


# ---------------------------------------------------------------------------
# girth


def girth(g: Multigraph) -> float:
    """Length of a shortest cycle; a double edge counts as a 2-cycle."""
    if any(m >= 2 for a in g.adj for m in a.values()):
        return 2
    best = float("inf")
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            v = q.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in g._nbr[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    q.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


# ---------------------------------------------------------------------------
# canonical labelling


@dataclass(frozen=True)
class CanonicalForm:
    """Result of canonical labelling.

    ``labeling[v]`` is the canonical position of vertex ``v``; ``certificate``
    is a hashable invariant that coincides exactly for isomorphic (coloured)
    graphs; ``generators`` generate the automorphism group.
    """

    labeling: Tuple[int, ...]
    certificate: Tuple
    generators: Tuple[Tuple[int, ...], ...]

    @cached_property
    def aut_order(self) -> int:
        return group_order(len(self.labeling), self.generators)


def group_order(n: int, generators: Sequence[Sequence[int]]) -> int:
    if not generators or n == 0:
        return 1
    from sympy.combinatorics import Permutation, PermutationGroup

    return int(PermutationGroup([Permutation(list(g)) for g in generators]).order())


class _Partition:
    __slots__ = ("lab", "cell_len", "cell_of")

    def __init__(self, lab, cell_len, cell_of):
        self.lab = lab
        self.cell_len = cell_len
        self.cell_of = cell_of

    def copy(self):
        return _Partition(list(self.lab), dict(self.cell_len), list(self.cell_of))

    def is_discrete(self):
        return len(self.cell_len) == len(self.lab)

    def shape(self):
        return tuple(self.cell_len[s] for s in sorted(self.cell_len))


def _refine(adj, part: _Partition, queue: List[int]) -> Tuple:
    """Equitable refinement; returns a trace usable as a node invariant."""
    lab, cell_len, cell_of = part.lab, part.cell_len, part.cell_of
    in_queue = set(queue)
    q = deque(sorted(in_queue))
    trace = []
    while q:
        s = q.popleft()
        in_queue.discard(s)
        cnt: Dict[int, int] = {}
        for w in lab[s:s + cell_len[s]]:
            for v, m in adj[w].items():
                cnt[v] = cnt.get(v, 0) + m
        touched = sorted({cell_of[v] for v in cnt})
        for c in touched:
            length = cell_len[c]
            if length == 1:
                continue
            members = lab[c:c + length]
            keys = [cnt.get(v, 0) for v in members]
            if min(keys) == max(keys):
                continue
            order = sorted(range(length), key=lambda i: keys[i])
            members = [members[i] for i in order]
            keys = [keys[i] for i in order]
            lab[c:c + length] = members
            starts = [c]
            for i in range(1, length):
                if keys[i] != keys[i - 1]:
                    starts.append(c + i)
            ends = starts[1:] + [c + length]
            for a, b in zip(starts, ends):
                cell_len[a] = b - a
                for v in lab[a:b]:
                    cell_of[v] = a
            trace.append((c, tuple(b - a for a, b in zip(starts, ends)),
                          tuple(keys[a - c] for a in starts)))
            for a in starts:
                if a not in in_queue:
                    in_queue.add(a)
                    q.append(a)
    return tuple(trace)


def canonical_form(g: Multigraph, colors: Optional[Sequence[Hashable]] = None) -> CanonicalForm:
    """Canonical labelling by individualisation and refinement."""
    n = g.n
    adj = g.adj
    if colors is None:
        colors = [0] * n
    distinct = sorted(set(colors), key=lambda c: (str(type(c)), c))
    rank = {c: i for i, c in enumerate(distinct)}
    lab = sorted(range(n), key=lambda v: rank[colors[v]])
    cell_len = {}
    cell_of = [0] * n
    i = 0
    while i < n:
        j = i
        while j < n and rank[colors[lab[j]]] == rank[colors[lab[i]]]:
            j += 1
        cell_len[i] = j - i
        for v in lab[i:j]:
            cell_of[v] = i
        i = j
    part = _Partition(lab, cell_len, cell_of)
    color_key = tuple(rank[colors[v]] for v in lab)
    color_key = (tuple(distinct), color_key)
    if n == 0:
        return CanonicalForm((), (0, color_key, ()), ())
    root_trace = _refine(adj, part, sorted(cell_len))

    state = {
        "first": None,      # (key, lab, path)
        "best": None,       # (key, lab, path)
        "gens": [],
    }

    def certificate(lab_):
        pos = [0] * n
        for i_, v in enumerate(lab_):
            pos[v] = i_
        rows = []
        for v in lab_:
            rows.append(tuple(sorted((pos[w], m) for w, m in adj[v].items())))
        return tuple(rows)

    def target_cell(p: _Partition):
        best_s, best_len = None, None
        for s in sorted(p.cell_len):
            length = p.cell_len[s]
            if length > 1 and (best_len is None or length < best_len):
                best_s, best_len = s, length
        return best_s

    def orbits_fixing(prefix):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gen in state["gens"]:
            if all(gen[v] == v for v in prefix):
                for v in range(n):
                    a, b = find(v), find(gen[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def leaf(p: _Partition, inv: Tuple, path: Tuple[int, ...]) -> int:
        cert = certificate(p.lab)
        key = (inv, cert)
        if state["first"] is None:
            state["first"] = (key, list(p.lab), path)
            state["best"] = (key, list(p.lab), path)
            return len(path)
        fkey, flab, fpath = state["first"]
        if key == fkey:
            gen = [0] * n
            for i_, v in enumerate(flab):
                gen[v] = p.lab[i_]
            state["gens"].append(tuple(gen))
            return _common(path, fpath)
        bkey, blab, bpath = state["best"]
        if key > bkey:
            state["best"] = (key, list(p.lab), path)
            return len(path)
        if key == bkey:
            gen = [0] * n
            for i_, v in enumerate(blab):
                gen[v] = p.lab[i_]
            state["gens"].append(tuple(gen))
            return _common(path, bpath)
        return len(path)

    def explore(p: _Partition, inv: Tuple, path: Tuple[int, ...], on_first: bool) -> int:
        """Returns the depth to which the search should unwind."""
        best = state["best"]
        if best is not None and not on_first:
            bprefix = best[0][0][: len(inv)]
            if inv < bprefix:
                return len(path)
        if p.is_discrete():
            return leaf(p, inv, path)
        s = target_cell(p)
        cell = sorted(p.lab[s:s + p.cell_len[s]])
        explored = []
        depth = len(path)
        for v in cell:
            if on_first and explored:
                find = orbits_fixing(path)
                if any(find(v) == find(u) for u in explored):
                    continue
            child = p.copy()
            # individualise v: move it to the front of its cell
            lab_ = child.lab
            i_ = lab_.index(v, s, s + child.cell_len[s])
            lab_[s], lab_[i_] = lab_[i_], lab_[s]
            rest = child.cell_len[s] - 1
            child.cell_len[s] = 1
            child.cell_len[s + 1] = rest
            for w in lab_[s + 1:s + 1 + rest]:
                child.cell_of[w] = s + 1
            child.cell_of[v] = s
            trace = _refine(adj, child, [s])
            ninv = inv + ((s, child.shape(), trace),)
            back = explore(child, ninv, path + (v,), on_first and not explored)
            explored.append(v)
            if back < depth:
                return back
        return depth

    explore(part, ((root_trace, part.shape()),), (), True)
    key, blab, _ = state["best"]
    labeling = [0] * n
    for i_, v in enumerate(blab):
        labeling[v] = i_
    cert = (n, color_key, key[1], _hashable_inv(key[0]))
    return CanonicalForm(tuple(labeling), cert, tuple(state["gens"]))


def _hashable_inv(inv):
    return inv


def _common(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def canonical_key(g: Multigraph, colors: Optional[Sequence[Hashable]] = None) -> Tuple:
    if colors is None:
        return g.canonical.certificate
    return canonical_form(g, colors).certificate


def is_isomorphic(a: Multigraph, b: Multigraph) -> bool:
    return a.n == b.n and canonical_key(a) == canonical_key(b)


def automorphism_orbits(g: Multigraph, colors=None) -> List[List[int]]:
    cf = canonical_form(g, colors) if colors is not None else g.canonical
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in cf.generators:
        for v in range(g.n):
            a, b = find(v), find(gen[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: Dict[int, List[int]] = {}
    for v in range(g.n):
        orbits.setdefault(find(v), []).append(v)
    return sorted(orbits.values())


# ---------------------------------------------------------------------------
# Dynkin diagrams


@dataclass(frozen=True)
class DynkinType:
    """Label such as ``("A", 3, False)`` for ``A_3`` or ``("A", 3, True)``
    for the affine diagram of type ``A_3``."""

    letter: str
    rank: int
    affine: bool

    def __str__(self):
        return f"{self.letter}{'~' if self.affine else ''}{self.rank}"

    @property
    def milnor(self) -> int:
        return self.rank

    @property
    def sort_key(self):
        return (self.rank, "ADE".index(self.letter))


def dynkin_classify(g: Multigraph) -> Tuple[Optional[DynkinType], Optional[Dict[int, int]]]:
    """Classify a connected multigraph as an (affine) Dynkin diagram.

    Returns ``(type, kappa)`` where ``kappa`` gives the coefficients of the
    fundamental cycle for affine types, or ``(None, None)`` if the graph is
    not of either kind.
    """
    n = g.n
    if n == 0 or not g.is_connected():
        return None, None
    if n == 2 and g.mult(0, 1) == 2:
        return DynkinType("A", 1, True), {0: 1, 1: 1}
    if not g.is_simple():
        return None, None
    degs = [g.degree(v) for v in range(n)]
    e = g.num_edges
    if e == n and all(d == 2 for d in degs) and n >= 3:
        return DynkinType("A", n - 1, True), {v: 1 for v in range(n)}
    if e != n - 1:
        return None, None
    # trees
    if max(degs) <= 2:
        return DynkinType("A", n, False), None
    branch = [v for v in range(n) if degs[v] >= 3]
    if max(degs) == 4:
        if n == 5:
            c = branch[0]
            return DynkinType("D", 4, True), {v: (2 if v == c else 1) for v in range(n)}
        return None, None
    if len(branch) == 2:
        b1, b2 = branch
        leaves = [v for v in range(n) if degs[v] == 1]
        # all four leaves must hang directly off the two branch vertices
        if all(any(w in branch for w in g.neighbors(l)) for l in leaves) and len(leaves) == 4:
            kappa = {v: (1 if degs[v] == 1 else 2) for v in range(n)}
            return DynkinType("D", n - 1, True), kappa
        return None, None
    if len(branch) != 1:
        return None, None
    c = branch[0]
    arms = []
    for w in g.neighbors(c):
        length = 1
        prev, cur = c, w
        while degs[cur] == 2:
            nxt = next(x for x in g.neighbors(cur) if x != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    p, q, r = arms
    if p == 1 and q == 1:
        return DynkinType("D", n, False), None
    if (p, q) == (1, 2) and r in (2, 3, 4):
        return DynkinType("E", n, False), None
    kappa = None
    if (p, q, r) == (2, 2, 2):
        t = DynkinType("E", 6, True)
    elif (p, q, r) == (1, 3, 3):
        t = DynkinType("E", 7, True)
    elif (p, q, r) == (1, 2, 5):
        t = DynkinType("E", 8, True)
    else:
        return None, None
    kappa = _null_vector(g)
    return t, kappa


def _null_vector(g: Multigraph) -> Dict[int, int]:
    from . import exact

    basis = exact.kernel_basis(g.gram())
    assert len(basis) == 1
    v = basis[0]
    if sum(v) < 0:
        v = [-x for x in v]
    return {i: x for i, x in enumerate(v)}


# ---------------------------------------------------------------------------
# minimal affine subgraph and the fibration it induces


def _induced_cycles(g: Multigraph, length: int) -> List[Tuple[int, ...]]:
    """Vertex sets of induced cycles of the given length (simple graphs)."""
    out = set()
    for s in range(g.n):
        stack = [(s,)]
        while stack:
            path = stack.pop()
            last = path[-1]
            if len(path) == length:
                if s in g.adj[last]:
                    out.add(tuple(sorted(path)))
                continue
            closing = len(path) + 1 == length
            for w in g.neighbors(last):
                if w <= s or w in path:
                    continue
                bad = False
                for u in path[:-1]:
                    if w in g.adj[u] and not (u == s and closing):
                        bad = True
                        break
                if not bad:
                    stack.append(path + (w,))
    return sorted(out)


def affine_subgraphs(g: Multigraph, milnor: int) -> List[Tuple[DynkinType, Tuple[int, ...]]]:
    """Induced affine Dynkin subgraphs with the given Milnor number."""
    out = []
    if milnor == 1:
        for u, v, m in g.edges():
            if m == 2:
                out.append((DynkinType("A", 1, True), (u, v)))
        return out
    for cyc in _induced_cycles(g, milnor + 1):
        out.append((DynkinType("A", milnor, True), cyc))
    k = milnor + 1
    if milnor >= 4:
        for vs in _trees_of_size(g, k):
            t, _ = dynkin_classify(g.induced(vs))
            if t is not None and t.affine and t.letter in "DE":
                out.append((t, vs))
    order = {"A": 0, "D": 1, "E": 2}
    out.sort(key=lambda x: (order[x[0].letter], x[1]))
    return out


def _trees_of_size(g: Multigraph, k: int) -> List[Tuple[int, ...]]:
    """Connected induced subgraphs with ``k`` vertices that are trees with a
    branch vertex (candidates for affine types ``D`` and ``E``)."""
    found = set()
    n = g.n
    for s in range(n):
        if g.degree(s) < 3:
            continue
        # grow connected sets containing s with all vertices >= min constraint
        frontier = {frozenset([s])}
        for _ in range(k - 1):
            nxt = set()
            for sset in frontier:
                boundary = {w for v in sset for w in g.neighbors(v)} - sset
                for w in boundary:
                    # stay a tree: w has exactly one neighbour inside
                    if sum(1 for v in sset if w in g.adj[v]) == 1:
                        nxt.add(sset | {w})
            frontier = nxt
        for sset in frontier:
            found.add(tuple(sorted(sset)))
    return sorted(found)


@dataclass
class PhiTaxonomy:
    phi: Tuple[int, ...]
    phi_type: DynkinType
    kappa: Dict[int, int]
    sections: Dict[int, int]  # section -> multiplicity s.kappa
    fibers: List[Tuple[DynkinType, Tuple[int, ...]]]


def phi_taxonomy(g: Multigraph) -> Optional[PhiTaxonomy]:
    """Minimal affine subgraph ``Phi``, its sections and the other fibres.

    ``Phi`` has the smallest Milnor number, then type ``A < D < E``; ties are
    broken by the canonically least vertex set so the choice is invariant.
    """
    labeling = g.canonical.labeling
    for mu in range(1, g.n):
        cands = affine_subgraphs(g, mu)
        if not cands:
            continue
        order = {"A": 0, "D": 1, "E": 2}
        best_letter = min(order[t.letter] for t, _ in cands)
        cands = [(t, vs) for t, vs in cands if order[t.letter] == best_letter]
        t, phi = min(cands, key=lambda c: tuple(sorted(labeling[v] for v in c[1])))
        _, kappa_local = dynkin_classify(g.induced(phi))
        kappa = {phi[i]: c for i, c in kappa_local.items()}
        phiset = set(phi)
        sections: Dict[int, int] = {}
        for v in range(g.n):
            if v in phiset:
                continue
            s = sum(kappa[u] * g.mult(v, u) for u in phi)
            if s:
                sections[v] = s
        rest = [v for v in range(g.n) if v not in phiset and v not in sections]
        fibers = []
        for comp in g.components(rest):
            ft, _ = dynkin_classify(g.induced(comp))
            fibers.append((ft, tuple(comp)))
        return PhiTaxonomy(tuple(phi), t, kappa, sections, fibers)
    return None
