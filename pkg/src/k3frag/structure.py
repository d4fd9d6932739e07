"""Local structure of configurations: perfect subgraphs, bouquets, stars,
the octic obstructions and the hyperelliptic models."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import exact
from .fano import NotHyperbolic, fano_lattice, find_fragments, graph_on
from .graphs import Multigraph, canonical_form, dynkin_classify
from .lattice import (
    PolarizedLattice,
    admissibility_witness,
    embeds_in_k3,
    finite_index_extensions,
    geometric_extensions,
    is_m_admissible,
    lines as lattice_lines,
)

# ---------------------------------------------------------------------------
# perfect subgraphs


def is_perfect(g: Multigraph, delta: Sequence[int]) -> bool:
    """Every vertex outside ``delta`` has at most one neighbour in it."""
    ds = set(delta)
    for u in range(g.n):
        if u not in ds and sum(g.mult(u, v) for v in ds) > 1:
            return False
    return True


def perfect_complement(g: Multigraph, delta: Sequence[int]) -> Tuple[int, ...]:
    ds = set(delta)
    return tuple(u for u in range(g.n) if u not in ds and not any(g.mult(u, v) for v in ds))


def perfect_subgraphs(g: Multigraph) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """Nonempty perfect vertex sets up to automorphism, with complements.

    The representative of an orbit is its lexicographically least member.
    """
    n = g.n
    inside = [False] * n
    hits = [0] * n
    found: List[Tuple[int, ...]] = []

    def rec(v: int):
        if v == n:
            d = tuple(u for u in range(n) if inside[u])
            if d:
                found.append(d)
            return
        # v outside: all its neighbours are decided up to v, later ones may
        # still join, so only the count so far can be checked
        if hits[v] <= 1 and all(inside[w] or hits[w] <= 1 for w in g.neighbors(v) if w < v):
            rec(v + 1)
        inside[v] = True
        for w, m in g.adj[v].items():
            hits[w] += m
        if all(inside[w] or hits[w] <= 1 for w in g.neighbors(v) if w < v):
            rec(v + 1)
        for w, m in g.adj[v].items():
            hits[w] -= m
        inside[v] = False

    rec(0)
    found = [d for d in found if is_perfect(g, d)]
    gens = g.canonical.generators
    seen = set()
    out: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for d in sorted(found, key=lambda d: (len(d), d)):
        if d in seen:
            continue
        orbit = {d}
        stack = [d]
        while stack:
            s = stack.pop()
            for p in gens:
                t = tuple(sorted(p[v] for v in s))
                if t not in orbit:
                    orbit.add(t)
                    stack.append(t)
        seen |= orbit
        rep = min(orbit)
        out[rep] = perfect_complement(g, rep)
    return out


# ---------------------------------------------------------------------------
# bouquets


def bouquet(g: Multigraph, degree: int, line: int,
            fragments: Optional[List[Tuple[int, ...]]] = None) -> List[Tuple[int, ...]]:
    """Fragments of ``g`` through ``line``."""
    if fragments is None:
        fragments = find_fragments(g, degree)
    return [f for f in fragments if line in f]


def multiplicities(g: Multigraph, degree: int) -> List[int]:
    frags = find_fragments(g, degree)
    mult = [0] * g.n
    for f in frags:
        for v in f:
            mult[v] += 1
    return mult


def hnum_from_multiplicities(mult: Sequence[int], degree: int) -> int:
    total = sum(mult)
    if total % degree:
        raise ValueError("multiplicities do not sum to a multiple of the degree")
    return total // degree


# ---------------------------------------------------------------------------
# stars


def star(g: Multigraph, line: int) -> Multigraph:
    return g.induced(sorted(g.neighbors(line)))


def star_decomposition(g: Multigraph, line: int) -> Counter:
    """Dynkin labels of the components of the star of ``line``."""
    s = star(g, line)
    out: Counter = Counter()
    for comp in s.components():
        t, _ = dynkin_classify(s.induced(comp))
        out[str(t) if t is not None else "other"] += 1
    return out


def star_graph(degree: int, triangles: int, edges: int, points: int) -> Multigraph:
    """A line 0 whose star has the given numbers of triangles, edges and points."""
    adj: List[Dict[int, int]] = [dict()]

    def add(k: int):
        start = len(adj)
        for i in range(k):
            adj.append({0: 1})
            adj[0][start + i] = 1
        for i in range(k):
            for j in range(i + 1, k):
                adj[start + i][start + j] = 1
                adj[start + j][start + i] = 1

    for _ in range(triangles):
        add(3)
    for _ in range(edges):
        add(2)
    for _ in range(points):
        add(1)
    return Multigraph.from_adjacency(adj)


def star_realizable(degree: int, triangles: int, edges: int, points: int, m: int = 2) -> bool:
    """Some geometric saturation of the star graph keeps the star of 0 unchanged."""
    g = star_graph(degree, triangles, edges, points)
    try:
        fl = fano_lattice(g, degree)
    except NotHyperbolic:
        return False
    base = fl.lattice
    if base.signature != (1, base.rank - 1, 0) or base.rank > 20:
        return False
    k = len(g.neighbors(0))

    def same_star(lat, t):
        ell = fl.coords[0] if t is None else _apply(fl.coords[0], t)
        return sum(1 for u in lattice_lines(lat) if lat.dot(u, ell) == 1) == k

    if is_m_admissible(base, m) and same_star(base, None) and embeds_in_k3(base) == "yes":
        return True
    # both conditions only get worse in overlattices
    for _kernel, new, _t in finite_index_extensions(base, m, keep=same_star):
        if embeds_in_k3(new) == "yes":
            return True
    return False


def _apply(c, t):
    n = len(t[0])
    return tuple(int(sum(c[i] * t[i][j] for i in range(len(c)))) for j in range(n))


def quartic_star_table(p_max: int = 7, q_max: int = 14) -> Dict[int, Optional[int]]:
    """Largest number of isolated star points next to ``p`` triangles, degree 4."""
    table: Dict[int, Optional[int]] = {}
    for p in range(p_max + 1):
        best = None
        for q in range(q_max + 1):
            if star_realizable(4, p, 0, q):
                best = q
        table[p] = best
    return table


def sextic_star_table(p_max: int = 2, q_max: int = 12) -> Dict[int, List[int]]:
    """Realizable numbers of points next to ``p`` edges in the star, degree 6."""
    return {p: [q for q in range(q_max + 1) if star_realizable(6, 0, p, q)]
            for p in range(p_max + 1)}


def quartic_bound(mult_max: int, lines_max: int) -> Tuple[int, int]:
    """Bound on the number of fragments of a quartic; returned as a fraction."""
    from fractions import Fraction
    b = Fraction(mult_max, 4) * lines_max
    return b.numerator, b.denominator


@dataclass
class QuarticBoundReport:
    mult_max: int
    lines_max: int
    bound: int


def quartic_bound_report(mult_max: int, lines_max: int = 48) -> QuarticBoundReport:
    num, den = quartic_bound(mult_max, lines_max)
    return QuarticBoundReport(mult_max, lines_max, num // den)


# ---------------------------------------------------------------------------
# degree 8


def cubic_graph(edges: Sequence[Tuple[int, int]], one_based: bool = False) -> Multigraph:
    s = 1 if one_based else 0
    n = 1 + max(max(e) for e in edges) - s
    return Multigraph(n, [(a - s, b - s) for a, b in edges])


def triangles(g: Multigraph) -> List[Tuple[int, int, int]]:
    out = []
    for a in range(g.n):
        for b in g.neighbors(a):
            if b <= a:
                continue
            for c in g.neighbors(b):
                if c > b and g.mult(a, c):
                    out.append((a, b, c))
    return out


def pencil_gram(g: Multigraph, degree: int, o: Sequence[int], p_h: int) -> List[List[int]]:
    """Generator Gram of the vertices, ``h`` and an isotropic ``p``.

    ``p.h = p_h`` and ``p.v = 1`` exactly for ``v`` in ``o``.
    """
    n = g.n
    gram = g.gram()
    for i, row in enumerate(gram):
        row += [1, 1 if i in o else 0]
    gram.append([1] * n + [degree, p_h])
    gram.append([1 if i in o else 0 for i in range(n)] + [p_h, 0])
    return gram


def gram_norm(gram: Sequence[Sequence[int]], x: Sequence[int]) -> int:
    return sum(x[i] * gram[i][j] * x[j] for i in range(len(x)) for j in range(len(x)) if x[i] and x[j])


def gram_dot(gram: Sequence[Sequence[int]], x: Sequence[int], y: Sequence[int]) -> int:
    return sum(x[i] * gram[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j])


@dataclass
class PencilResult:
    o: Tuple[int, ...]
    positive: int
    witness: Optional[Tuple[int, ...]]


def octic_pencil(g: Multigraph, o: Sequence[int]) -> PencilResult:
    """Adjoin a cubic pencil class through ``o`` to a degree 8 fragment.

    Returns the positive inertia of the generator Gram and, when it is
    hyperbolic, a path ``a-b-c`` disjoint from ``o`` whose sum minus ``p``
    is exceptional.
    """
    gram = pencil_gram(g, 8, o, 3)
    pos, _, _ = exact.inertia(gram)
    if pos > 1:
        return PencilResult(tuple(o), pos, None)
    n = g.n
    for a, b, c in _induced_paths(g):
        if set((a, b, c)) & set(o):
            continue
        x = [0] * (n + 2)
        x[a] = x[b] = x[c] = 1
        x[n + 1] = -1
        hvec = [0] * (n + 2)
        hvec[n] = 1
        if gram_norm(gram, x) == -2 and gram_dot(gram, x, hvec) == 0:
            return PencilResult(tuple(o), pos, tuple(sorted((a, b, c))))
    return PencilResult(tuple(o), pos, None)


def _induced_paths(g: Multigraph):
    for b in range(g.n):
        nb = sorted(g.neighbors(b))
        for i, a in enumerate(nb):
            for c in nb[i + 1:]:
                if not g.mult(a, c):
                    yield (a, b, c)


def pencil_witnesses(g: Multigraph, o: Sequence[int]) -> List[Tuple[int, int, int]]:
    """All paths ``a-b-c`` with ``v_a + v_b + v_c - p`` exceptional."""
    gram = pencil_gram(g, 8, o, 3)
    n = g.n
    hvec = [0] * (n + 2)
    hvec[n] = 1
    out = []
    for a, b, c in _induced_paths(g):
        x = [0] * (n + 2)
        x[a] = x[b] = x[c] = 1
        x[n + 1] = -1
        if gram_norm(gram, x) == -2 and gram_dot(gram, x, hvec) == 0:
            out.append(tuple(sorted((a, b, c))))
    return sorted(set(out))


def subset_orbits(g: Multigraph, k: int) -> List[Tuple[int, ...]]:
    """Least representatives of the ``Aut(g)`` orbits on ``k``-subsets."""
    from itertools import combinations
    gens = g.canonical.generators
    seen = set()
    reps = []
    for s in combinations(range(g.n), k):
        if s in seen:
            continue
        orbit = {s}
        stack = [s]
        while stack:
            t = stack.pop()
            for p in gens:
                u = tuple(sorted(p[v] for v in t))
                if u not in orbit:
                    orbit.add(u)
                    stack.append(u)
        seen |= orbit
        reps.append(min(orbit))
    return reps


def union_with_attachment(g: Multigraph, delta: Sequence[int],
                          att: Dict[int, int]) -> Tuple[Multigraph, Dict[int, int]]:
    """Glue a second copy of ``g`` along ``delta`` (identity on ``delta``).

    ``att`` maps vertices of the first copy to the copy vertex they meet.
    Returns the union and the map from copy vertices to union vertices;
    vertices of the first copy keep their labels.
    """
    n = g.n
    copy: Dict[int, int] = {}
    nxt = n
    for v in range(n):
        if v in delta:
            copy[v] = v
        else:
            copy[v] = nxt
            nxt += 1
    adj: List[Dict[int, int]] = [dict() for _ in range(nxt)]
    for a, b, m in g.edges():
        for x, y in ((a, b), (copy[a], copy[b])):
            adj[x][y] = m
            adj[y][x] = m
    for u, w in att.items():
        adj[u][copy[w]] = 1
        adj[copy[w]][u] = 1
    return Multigraph.from_adjacency(adj), copy


def class_vector(size: int, terms: Dict[int, int]) -> List[int]:
    x = [0] * size
    for i, c in terms.items():
        x[i] += c
    return x


def generator_gram(g: Multigraph, degree: int) -> List[List[int]]:
    n = g.n
    gram = g.gram()
    for row in gram:
        row.append(1)
    gram.append([1] * n + [degree])
    return gram


def is_exceptional(gram: Sequence[Sequence[int]], x: Sequence[int], h_index: int) -> bool:
    hvec = [0] * len(gram)
    hvec[h_index] = 1
    return gram_norm(gram, x) == -2 and gram_dot(gram, x, hvec) == 0


def attachment_sides(union: Multigraph, n0: int, phi: Sequence[Optional[int]]) -> List[Tuple[int, int]]:
    """For a gluing along an edge, compare how the attachment sits on both sides.

    ``union`` has the old graph on ``0..n0-1``; ``phi[a]`` is the old vertex
    identified with copy vertex ``a`` (or None). For every old vertex ``u``
    outside the perfect complement's neighbourhood the pair returned holds the
    vertex of the edge at distance two from ``u`` in the old graph and the
    one at distance two from its attached vertex in the new copy. Equal
    entries mean the attachment is not a swap.
    """
    delta = [v for v in phi if v is not None]
    if len(delta) != 2:
        raise ValueError("attachment sides are defined for an edge")
    old = set(range(n0))
    new_vertices = set(range(n0, union.n)) | set(delta)
    out = []
    for u in perfect_complement(union.induced(range(n0)), delta):
        ws = [w for w in union.neighbors(u) if w >= n0]
        if len(ws) != 1:
            raise ValueError("not an attachment bijection")
        d_old = union.distances_from(u, allowed=old)
        d_new = union.distances_from(ws[0], allowed=new_vertices)
        side_old = [v for v in delta if d_old.get(v) == 2]
        side_new = [v for v in delta if d_new.get(v) == 2]
        out.append((side_old[0] if len(side_old) == 1 else -1,
                    side_new[0] if len(side_new) == 1 else -1))
    return out


def is_swap(union: Multigraph, n0: int, phi: Sequence[Optional[int]]) -> bool:
    return all(a != b for a, b in attachment_sides(union, n0, phi))


# ---------------------------------------------------------------------------
# saturated bouquets of the cube


@dataclass
class SaturatedBouquet:
    graph: Multigraph
    line: int
    size: int
    fragments: int
    lines: int
    max_valency: int


def _closure(union: Multigraph, line: int, degree: int, cube_key, m: int):
    """Saturate and keep the cube fragments through ``line``."""
    try:
        fl = fano_lattice(union, degree)
    except NotHyperbolic:
        return None
    lat = fl.lattice
    if lat.signature != (1, lat.rank - 1, 0) or lat.rank > 20:
        return None
    if not is_m_admissible(lat, m):
        return None
    ls = sorted(lattice_lines(lat))
    g = graph_on(lat, ls)
    ell = ls.index(fl.coords[line])
    frags = find_fragments(g, degree)
    cubes = [f for f in frags if g.induced(f).canonical.certificate == cube_key]
    through = [f for f in cubes if ell in f]
    keep = sorted({v for f in through for v in f})
    pos = {v: i for i, v in enumerate(keep)}
    b = g.induced(keep)
    hp = sorted({v for f in frags for v in f})
    val = max((len([w for w in g.neighbors(v) if w in set(hp)]) for v in hp), default=0)
    return b, pos[ell], len(through), len(frags), len(ls), val, lat


def saturated_bouquets(m: int = 3, limit: Optional[int] = None) -> List[SaturatedBouquet]:
    """Closure of cube bouquets at a line under gluing and saturation.

    Starting from one cube, repeatedly glue a cube through the marked line,
    saturate, and keep the cubes through the marked line; ``m`` is the
    admissibility level. Returns one entry per isomorphism class of marked
    bouquet that is realized by an ``m``-subgeometric lattice.
    """
    from .expected import CUBE_EDGES
    from .search import State, gluings, attachments

    cube = cubic_graph(CUBE_EDGES)
    cube_key = cube.canonical.certificate
    degree = 8
    start = _closure(cube, 0, degree, cube_key, m)
    seen: Dict[Tuple, SaturatedBouquet] = {}
    frontier = []

    def add(item):
        b, ell, size, nf, nl, val, lat = item
        colors = [1 if v == ell else 0 for v in range(b.n)]
        key = canonical_form(b, colors).certificate
        if key in seen:
            return
        seen[key] = SaturatedBouquet(b, ell, size, nf, nl, val)
        frontier.append((b, ell))

    add(start)
    while frontier:
        b, ell = frontier.pop(0)
        fl = fano_lattice(b, degree)
        frags = find_fragments(b, degree)
        st = State(b, fl.lattice, list(fl.coords), frags, tuple(0 for _ in frags), False)
        atts = attachments(st, m)
        for glue in gluings(st, cube, atts, anchor=(0, ell), rank_increase=False):
            item = _closure(glue.graph, ell, degree, cube_key, m)
            if item is None:
                continue
            add(item)
        if limit is not None and len(seen) > limit:
            break
    out = []
    for sb in seen.values():
        fl = fano_lattice(sb.graph, degree)
        if geometric_extensions(fl.lattice, m):
            out.append(sb)
    return out


# ---------------------------------------------------------------------------
# hyperelliptic models


HYPERELLIPTIC_BOUNDS = {6: 9, 8: 8}
QUADRIC_RULING_MAX = 12
DOUBLE_PLANE_LINES_MAX = 144


def hyperelliptic_graph(n: int, c: int, lines: int = 2) -> Multigraph:
    """Lines ``l1, l2`` and ``n`` pairs meeting with multiplicity two.

    Vertex ``2 + 2i + r`` is the ``r``-th member of pair ``i``; it meets
    ``l_r`` once. ``l1.l2 = c``. With ``lines = 1`` only ``l1`` is present.
    """
    adj: List[Dict[int, int]] = [dict() for _ in range(2 + 2 * n)]

    def edge(a, b, m):
        if m:
            adj[a][b] = m
            adj[b][a] = m

    if lines == 2:
        edge(0, 1, c)
    for i in range(n):
        a, b = 2 + 2 * i, 3 + 2 * i
        edge(a, b, 2)
        edge(0, a, 1)
        if lines == 2:
            edge(1, b, 1)
    g = Multigraph.from_adjacency(adj)
    if lines == 1:
        g = g.induced([0] + list(range(2, 2 + 2 * n)))
    return g


@dataclass
class ModelClass:
    n: int
    hyperbolic: bool
    admissible: bool
    geometric: bool
    fragments: int


def classify_hyperelliptic(degree: int, n: int, c: int) -> ModelClass:
    """Hyperbolicity, 1-admissibility and 1-subgeometricity of the model."""
    g = hyperelliptic_graph(n, c)
    try:
        fl = fano_lattice(g, degree)
    except NotHyperbolic:
        return ModelClass(n, False, False, False, 0)
    lat = fl.lattice
    if lat.signature != (1, lat.rank - 1, 0):
        return ModelClass(n, False, False, False, 0)
    adm = is_m_admissible(lat, 1)
    geo = adm and bool(geometric_extensions(lat, 1))
    return ModelClass(n, True, adm, geo, len(find_fragments(g, degree)))


def forced_line_pairing(degree: int) -> List[int]:
    """Values of ``l1.l2`` for which two pairs and both lines form a fragment."""
    d = degree // 2
    out = []
    for c in range(3):
        g = hyperelliptic_graph(d - 1, c)
        if find_fragments(g, degree):
            try:
                fl = fano_lattice(g, degree)
            except NotHyperbolic:
                continue
            if is_m_admissible(fl.lattice, 1):
                out.append(c)
    return out


def hyperelliptic_census(degree: int, n, n2: Optional[int] = None) -> FrozenSet[int]:
    """Possible numbers of fragments of a hyperelliptic model.

    Degree 2: ``n`` is the number of lines. Degree 4: ``n`` and ``n2`` are
    the numbers of lines in the two rulings. Degrees 6 and 8: ``n`` is the
    number of line pairs, both lines present.
    """
    if degree == 2:
        if n < 0 or n > DOUBLE_PLANE_LINES_MAX or n % 2:
            raise ValueError(f"a double plane has an even number of lines, at most {DOUBLE_PLANE_LINES_MAX}")
        return frozenset({n // 2})
    if degree == 4:
        if n2 is None:
            raise ValueError("degree 4 needs the sizes of both rulings")
        for k in (n, n2):
            if k < 0 or k > QUADRIC_RULING_MAX:
                raise ValueError(f"a ruling contains at most {QUADRIC_RULING_MAX} lines")
        return frozenset({n * n2})
    if degree in HYPERELLIPTIC_BOUNDS:
        if n < 0 or n > HYPERELLIPTIC_BOUNDS[degree]:
            raise ValueError(f"at most {HYPERELLIPTIC_BOUNDS[degree]} pairs in degree {degree}")
        d = degree // 2
        return frozenset(comb(k, d - 1) for k in range(n + 1))
    raise ValueError("hyperelliptic models exist in degrees 2, 4, 6, 8")
