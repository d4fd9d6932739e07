"""Brute force cross-check of the fragment catalogue in small degrees.

All connected cubic graphs are generated by adding one edge at a time at the
least vertex of degree below three, keeping one graph per isomorphism class
at every level, and then filtered with the fragment test.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .fragments import HFragment, is_fragment
from .graphs import Multigraph


def cubic_graphs(n: int, multi: bool = False) -> List[Multigraph]:
    """Connected cubic graphs on ``n`` vertices, one per isomorphism class.

    With ``multi`` loopless multigraphs are included.
    """
    if n % 2 or n < 2:
        return []
    level: Dict[Tuple, Multigraph] = {Multigraph(n).canonical.certificate: Multigraph(n)}
    for _ in range(3 * n // 2):
        nxt: Dict[Tuple, Multigraph] = {}
        for g in level.values():
            v = next(v for v in range(n) if g.degree(v) < 3)
            for w in range(n):
                if w == v or g.degree(w) >= 3:
                    continue
                if g.mult(v, w) and not multi:
                    continue
                edges = [(a, b, m) for a, b, m in g.edges()]
                edges.append((v, w, 1))
                h = Multigraph(n, edges)
                key = h.canonical.certificate
                if key not in nxt:
                    nxt[key] = h
        level = nxt
    return [g for g in level.values() if g.is_regular(3) and g.is_connected()]


def oracle_fragments(degree: int) -> List[HFragment]:
    """Fragments found by filtering every cubic graph on ``degree`` vertices.

    Multigraphs are only generated in degree 2: in higher degree two lines
    meeting twice span a 2-isotropic class, so no fragment has a multiple edge.
    """
    graphs = cubic_graphs(degree, multi=degree == 2)
    return [HFragment(g, degree) for g in graphs if is_fragment(g, degree)]
