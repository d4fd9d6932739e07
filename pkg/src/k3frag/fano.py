"""Fano lattices of line graphs and their saturations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from . import exact
from .graphs import Multigraph
from .lattice import PolarizedLattice, Vector, lines as lattice_lines


class NotHyperbolic(ValueError):
    """Raised when a graph has more than one positive direction with h."""


@dataclass(eq=False)
class FanoLattice:
    """Lattice generated by the vertices of a graph and a polarization.

    ``coords[v]`` are the coordinates of vertex ``v`` in the basis of
    ``lattice``. ``h`` has square ``degree``.
    """

    graph: Multigraph
    degree: int
    lattice: PolarizedLattice
    coords: List[Vector]
    _index: Dict[Vector, int] = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def vertex_of(self, x: Sequence[int]) -> Optional[int]:
        if self._index is None:
            self._index = {c: i for i, c in enumerate(self.coords)}
        return self._index.get(tuple(x))


def _generator_gram(g: Multigraph, degree: int) -> List[List[int]]:
    n = g.n
    gram = g.gram()
    for row in gram:
        row.append(1)
    gram.append([1] * n + [degree])
    return gram


def fano_lattice(g: Multigraph, degree: int) -> FanoLattice:
    """``(Z V + Z h) / ker`` with ``v^2 = -2``, ``v.h = 1``, ``h^2 = degree``.

    The basis is chosen greedily among the vertices (then ``h``), which keeps
    it short for the positive definite majorant used in enumeration.
    """
    if degree <= 0 or degree % 2:
        raise ValueError("degree must be a positive even integer")
    gram = _generator_gram(g, degree)
    total = len(gram)
    pos, neg, zero = exact.inertia(gram)
    if pos > 1:
        raise NotHyperbolic(f"signature ({pos}, {neg}, {zero})")
    # greedy independent subset of generators (vertices first, h last)
    chosen: List[int] = []
    echelon: List[Tuple[int, List[mpq]]] = []
    for i in range(total):
        row = [mpq(x) for x in gram[i]]
        for piv, erow in echelon:
            if row[piv]:
                f = row[piv] / erow[piv]
                row = [a - f * b for a, b in zip(row, erow)]
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is not None:
            echelon.append((piv, row))
            chosen.append(i)
    r = len(chosen)
    gb = [[gram[a][b] for b in chosen] for a in chosen]
    inv = exact.rational_inverse(gb)
    # coordinates of every generator in the chosen vectors
    coeffs = []
    for g_idx in range(total):
        rhs = [gram[b][g_idx] for b in chosen]
        coeffs.append([sum((inv[i][j] * rhs[j] for j in range(r)), mpq(0)) for i in range(r)])
    if all(c.denominator == 1 for row in coeffs for c in row):
        basis_change = None
        coords = [tuple(int(c) for c in row) for row in coeffs]
        lat_gram = gb
    else:
        rows = [[mpq(1 if i == j else 0) for j in range(r)] for i in range(r)] + coeffs
        basis = exact.hermite_basis(rows)
        binv = exact.rational_inverse(basis)
        coords = []
        for row in coeffs:
            new = [sum((row[i] * binv[i][j] for i in range(r)), mpq(0)) for j in range(r)]
            assert all(c.denominator == 1 for c in new)
            coords.append(tuple(int(c) for c in new))
        gbq = exact.matmul(basis, exact.matmul(gb, exact.transpose(basis)))
        lat_gram = [[int(x) for x in row] for row in gbq]
        basis_change = basis
    lat = PolarizedLattice(lat_gram, coords[-1])
    return FanoLattice(g, degree, lat, coords[:-1])


def fano_graph(lat: PolarizedLattice) -> Tuple[Multigraph, List[Vector]]:
    """Graph on the lines of ``lat``; returns the graph and line coordinates."""
    ls = sorted(lattice_lines(lat))
    return graph_on(lat, ls), ls


def graph_on(lat: PolarizedLattice, vectors: Sequence[Vector]) -> Multigraph:
    gram = lat.gram
    rows = [exact.matvec(gram, v) for v in vectors]
    edges = []
    for i in range(len(vectors)):
        ri = rows[i]
        for j in range(i + 1, len(vectors)):
            m = sum(a * b for a, b in zip(ri, vectors[j]))
            if m < 0:
                raise ValueError("negative intersection between lines")
            if m:
                edges.append((i, j, m))
    return Multigraph(len(vectors), edges)


@dataclass(eq=False)
class Saturation:
    """Lines of a (possibly extended) Fano lattice.

    The first ``n`` vertices of ``graph`` are the vertices of the original
    graph in their original order; further vertices are the new lines.
    """

    graph: Multigraph
    lattice: PolarizedLattice
    coords: List[Vector]
    kernel: Tuple = ()

    @property
    def fano(self) -> FanoLattice:
        return FanoLattice(self.graph, self.lattice.h_norm, self.lattice, self.coords)


def saturate(fl: FanoLattice, kernel: Tuple = (), extended: Optional[Tuple[PolarizedLattice, list]] = None) -> Saturation:
    """All lines of ``Fano(G)`` or of its extension by an isotropic kernel."""
    if extended is None:
        lat = fl.lattice
        coords = list(fl.coords)
    else:
        lat, t = extended
        coords = []
        for c in fl.coords:
            new = [sum((mpq(c[i]) * t[i][j] for i in range(len(c))), mpq(0)) for j in range(len(t[0]))]
            coords.append(tuple(int(x) for x in new))
    n = len(coords)
    index = {c: i for i, c in enumerate(coords)}
    extra = sorted(v for v in lattice_lines(lat) if v not in index)
    allv = coords + extra
    g = graph_on(lat, allv)
    # original adjacency must be preserved
    for u in range(n):
        for w, m in fl.graph.adj[u].items():
            if g.mult(u, w) != m:
                raise AssertionError("saturation changed the original graph")
    return Saturation(g, lat, allv, kernel)


# ---------------------------------------------------------------------------
# fragments


def find_fragments(g: Multigraph, degree: int) -> List[Tuple[int, ...]]:
    """Vertex sets ``S`` with ``u . sum(S) = 1`` for every vertex ``u``.

    Equivalently every vertex of ``S`` has three neighbours (with
    multiplicity) in ``S`` and every other vertex exactly one. Only sets of
    size ``degree`` are returned.
    """
    n = g.n
    nbrs = [list(g.adj[v].items()) for v in range(n)]
    x = [-1] * n
    cur = [0] * n          # weighted count of chosen neighbours
    free = [g.degree(v) for v in range(n)]  # weighted undecided neighbours
    out: List[Tuple[int, ...]] = []

    def feasible(u: int) -> bool:
        lo, hi = cur[u], cur[u] + free[u]
        if x[u] == 1:
            return lo <= 3 <= hi
        if x[u] == 0:
            return lo <= 1 <= hi
        return (lo <= 1 <= hi) or (lo <= 3 <= hi)

    def assign(v: int, val: int) -> bool:
        x[v] = val
        ok = feasible(v)
        for w, m in nbrs[v]:
            free[w] -= m
            if val:
                cur[w] += m
            if not feasible(w):
                ok = False
        return ok

    def undo(v: int, val: int):
        for w, m in nbrs[v]:
            free[w] += m
            if val:
                cur[w] -= m
        x[v] = -1

    count = [0]

    def rec():
        # most constrained undecided vertex: one adjacent to a tight vertex
        best = None
        for v in range(n):
            if x[v] == -1:
                best = v
                break
        if best is None:
            if count[0] == degree:
                out.append(tuple(v for v in range(n) if x[v] == 1))
            return
        for val in (1, 0):
            if val and count[0] >= degree:
                continue
            if assign(best, val):
                count[0] += val
                rec()
                count[0] -= val
            undo(best, val)

    if n >= degree:
        rec()
    return out


def is_fragment_graph(g: Multigraph, degree: int) -> bool:
    return g.n == degree and g.is_regular(3) and g.is_connected()


def h_part(g: Multigraph, degree: int) -> Tuple[Tuple[int, ...], List[Tuple[int, ...]]]:
    """Union of all fragments of ``g`` and the list of fragments."""
    frags = find_fragments(g, degree)
    union = sorted({v for f in frags for v in f})
    return tuple(union), frags
