"""Finite quadratic forms and the existence of even lattices.

A finite quadratic form is stored as a tuple of cyclic orders together with
a rational symmetric matrix ``gram``: ``b(g_i, g_j) = gram[i][j] mod 1`` and
``q(g_i) = gram[i][i] mod 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq
from sympy import factorint, legendre_symbol

Element = Tuple[int, ...]


def _frac_mod(x: mpq, m: int) -> mpq:
    """Representative of ``x mod m`` in ``[0, m)``."""
    k = (x.numerator // (m * x.denominator))
    r = x - m * k
    return r


def _vp(n: int, p: int) -> int:
    k = 0
    while n and n % p == 0:
        n //= p
        k += 1
    return k


def _den_exp(x: mpq, p: int) -> int:
    """Exponent of ``p`` in the denominator of ``x mod 1``."""
    r = _frac_mod(x, 1)
    if r == 0:
        return 0
    return _vp(r.denominator, p)


@dataclass(frozen=True)
class JordanComponent:
    """One orthogonal summand of a ``p``-primary form.

    ``kind`` is ``"cyclic"`` (value ``unit / p^k`` on a generator), ``"u"``
    (hyperbolic plane) or ``"v"`` (the anisotropic 2-dimensional 2-adic
    block). ``unit`` is the numerator ``a`` of ``q(x) = a / p^k`` for cyclic
    components.
    """

    p: int
    k: int
    kind: str
    unit: int = 0


@dataclass(frozen=True, eq=False)
class FiniteQuadraticForm:
    orders: Tuple[int, ...]
    gram: Tuple[Tuple[mpq, ...], ...]
    vectors: Optional[Tuple[Tuple[mpq, ...], ...]] = None

    # basic structure -------------------------------------------------------
    @property
    def size(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    @property
    def length(self) -> int:
        return len(self.orders)

    def q(self, c: Sequence[int]) -> mpq:
        g = self.gram
        s = mpq(0)
        for i, ci in enumerate(c):
            if ci:
                row = g[i]
                s += ci * ci * row[i]
                for j in range(i + 1, len(c)):
                    if c[j]:
                        s += 2 * ci * c[j] * row[j]
        return _frac_mod(s, 2)

    def b(self, c: Sequence[int], e: Sequence[int]) -> mpq:
        g = self.gram
        s = mpq(0)
        for i, ci in enumerate(c):
            if ci:
                row = g[i]
                for j, ej in enumerate(e):
                    if ej:
                        s += ci * ej * row[j]
        return _frac_mod(s, 1)

    def reduce(self, c: Sequence[int]) -> Element:
        return tuple(x % d for x, d in zip(c, self.orders))

    def add(self, c: Sequence[int], e: Sequence[int]) -> Element:
        return tuple((x + y) % d for x, y, d in zip(c, e, self.orders))

    def elements(self):
        return product(*(range(d) for d in self.orders))

    def vector(self, c: Sequence[int]) -> Tuple[mpq, ...]:
        """Dual lattice vector representing ``c`` (only for lattice forms)."""
        if self.vectors is None:
            raise ValueError("form has no lattice representatives")
        n = len(self.vectors[0]) if self.vectors else 0
        return tuple(sum((ci * self.vectors[i][k] for i, ci in enumerate(c)), mpq(0))
                     for k in range(n))

    def negate(self) -> "FiniteQuadraticForm":
        return FiniteQuadraticForm(
            self.orders, tuple(tuple(-x for x in r) for r in self.gram), self.vectors
        )

    def element_order(self, c: Sequence[int]) -> int:
        from math import gcd

        o = 1
        for x, d in zip(c, self.orders):
            k = d // gcd(x % d, d)
            o = o * k // gcd(o, k)
        return o

    @cached_property
    def primes(self) -> Tuple[int, ...]:
        ps = set()
        for d in self.orders:
            ps.update(factorint(d))
        return tuple(sorted(ps))

    def p_part(self, p: int) -> "FiniteQuadraticForm":
        """The ``p``-primary orthogonal summand."""
        idx = []
        scale = []
        orders = []
        for i, d in enumerate(self.orders):
            k = _vp(d, p)
            if k:
                idx.append(i)
                scale.append(d // p ** k)
                orders.append(p ** k)
        gram = tuple(
            tuple(self.gram[i][j] * si * sj for j, sj in zip(idx, scale))
            for i, si in zip(idx, scale)
        )
        vecs = None
        if self.vectors is not None:
            vecs = tuple(tuple(si * x for x in self.vectors[i]) for i, si in zip(idx, scale))
        return FiniteQuadraticForm(tuple(orders), gram, vecs)

    def p_length(self, p: int) -> int:
        return sum(1 for d in self.orders if d % p == 0)

    # Jordan decomposition ------------------------------------------------
    def jordan(self, p: int) -> List[JordanComponent]:
        """Orthogonal splitting of the ``p``-part into elementary summands."""
        qp = self.p_part(p)
        n = qp.length
        elems = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        comps: List[JordanComponent] = []

        def lin(c, a, x, bcoef=0, y=None):
            out = []
            for i in range(n):
                v = c[i] - a * x[i] - (bcoef * y[i] if y is not None else 0)
                out.append(v % qp.orders[i])
            return tuple(out)

        while elems:
            elems = [e for e in elems if any(e)]
            if not elems:
                break
            diag = [_den_exp(qp.b(e, e), p) for e in elems]
            smax = max(diag)
            pair = None
            for i in range(len(elems)):
                for j in range(i + 1, len(elems)):
                    sij = _den_exp(qp.b(elems[i], elems[j]), p)
                    if sij > smax:
                        smax, pair = sij, (i, j)
            if smax == 0:
                break
            s = smax
            pk = p ** s
            if pair is None:
                i = diag.index(s)
                x = elems[i]
            elif p != 2:
                i, j = pair
                x = qp.add(elems[i], elems[j])
                elems[i] = x
            else:
                i, j = pair
                x, y = elems[i], elems[j]
                bxx, bxy, byy = qp.b(x, x), qp.b(x, y), qp.b(y, y)
                det = bxx * byy - bxy * bxy
                rest = [e for t, e in enumerate(elems) if t not in (i, j)]
                new = []
                for z in rest:
                    bzx, bzy = qp.b(z, x), qp.b(z, y)
                    a = (bzx * byy - bzy * bxy) / det
                    c = (bxx * bzy - bxy * bzx) / det
                    new.append(lin(z, _padic_int(a, pk), x, _padic_int(c, pk), y))
                qx = qp.q(x) * pk
                qy = qp.q(y) * pk
                ax = int(qx) // 2
                cy = int(qy) // 2
                kind = "v" if (ax * cy) % 2 else "u"
                comps.append(JordanComponent(p, s, kind))
                elems = new
                continue
            bxx = qp.b(x, x)
            rest = [e for t, e in enumerate(elems) if t != i]
            new = []
            for z in rest:
                a = qp.b(z, x) / bxx
                new.append(lin(z, _padic_int(a, pk), x))
            qx = qp.q(x) * pk
            comps.append(JordanComponent(p, s, "cyclic", int(qx) % (2 * pk)))
            elems = new
        return comps

    # invariants ---------------------------------------------------------------
    @cached_property
    def signature(self) -> int:
        """Signature mod 8, via the Gauss sum of each Jordan component."""
        total = 0
        for p in self.primes:
            for comp in self.jordan(p):
                total += _component_signature(comp)
        return total % 8

    def gauss_sum_signature(self) -> int:
        """Signature from the Gauss sum over all elements (test oracle)."""
        import cmath
        import math

        z = 0j
        for c in self.elements():
            z += cmath.exp(1j * math.pi * float(self.q(c)))
        z /= math.sqrt(self.size)
        ang = cmath.phase(z) / (math.pi / 4)
        k = round(ang)
        if abs(ang - k) > 1e-6 or abs(abs(z) - 1) > 1e-6:
            raise ArithmeticError("Gauss sum is not an 8th root of unity")
        return k % 8

    def discr_unit(self, p: int) -> int:
        """Unit square class of ``discr K(q_p)``.

        For odd ``p`` this is a Legendre symbol (``+1``/``-1``); for ``p = 2``
        it is the residue mod 8 of the unit part.
        """
        comps = self.jordan(p)
        if p == 2:
            u = 1
            for c in comps:
                if c.kind == "cyclic":
                    u *= c.unit
                elif c.kind == "u":
                    u *= -1
                else:
                    u *= 3
            return u % 8
        s = 1
        for c in comps:
            s *= legendre_symbol(c.unit % p, p)
        return s

    def has_odd_order_two_summand(self) -> bool:
        """True when ``q_2`` splits off ``<theta/2>`` with ``theta`` odd."""
        q2 = self.p_part(2)
        halves = [d // 2 for d in q2.orders]
        for bits in product((0, 1), repeat=q2.length):
            if not any(bits):
                continue
            c = tuple(b * h for b, h in zip(bits, halves))
            if q2.b(c, c) == mpq(1, 2):
                return True
        return False

    # subgroups ------------------------------------------------------------------
    def isotropic_subgroups(self, accept=None) -> List[Tuple[Element, ...]]:
        """All isotropic subgroups, each as a tuple of generators.

        ``accept(gens)``, if given, must be monotone (a rejected subgroup has
        only rejected supergroups); rejected subgroups are pruned within each
        primary part. Mixed subgroups are returned unfiltered.
        """
        per_prime = []
        for p in self.primes:
            if self.size % (p * p):
                per_prime.append([()])
                continue
            per_prime.append(self._isotropic_p(p, accept))
        out = []
        for combo in product(*per_prime):
            gens = tuple(g for part in combo for g in part)
            out.append(gens)
        out.sort(key=len)
        return out

    def _isotropic_p(self, p: int, accept=None) -> List[Tuple[Element, ...]]:
        n = self.length
        idx = [i for i, d in enumerate(self.orders) if d % p == 0]
        ks = {i: _vp(self.orders[i], p) for i in idx}
        # elements of the p-part, in full coordinates
        ranges = []
        for i in range(n):
            if i in ks:
                step = self.orders[i] // p ** ks[i]
                ranges.append([step * t for t in range(p ** ks[i])])
            else:
                ranges.append([0])
        iso = [c for c in product(*ranges) if any(c) and self.q(c) == 0]
        if accept is not None:
            # a subgroup is rejected as soon as one of its cyclic subgroups is
            iso = [c for c in iso if accept((c,))]
        zero = tuple(0 for _ in range(n))
        seen = {frozenset([zero]): ()}
        frontier = [(frozenset([zero]), ())]
        while frontier:
            nxt = []
            for group, gens in frontier:
                for c in iso:
                    if c in group:
                        continue
                    if any(self.b(c, g) != 0 for g in gens):
                        continue
                    new = set(group)
                    mult = c
                    multiples = [zero]
                    while mult != zero:
                        multiples.append(mult)
                        mult = self.add(mult, c)
                    new = frozenset(self.add(a, m) for a in group for m in multiples)
                    if new in seen:
                        continue
                    if accept is not None and not accept(gens + (c,)):
                        seen[new] = None
                        continue
                    seen[new] = gens + (c,)
                    nxt.append((new, gens + (c,)))
            frontier = nxt
        return [g for g in seen.values() if g is not None]


def _padic_int(a: mpq, pk: int) -> int:
    """Residue mod ``pk`` of a rational with denominator prime to ``pk``."""
    return (a.numerator * pow(a.denominator, -1, pk)) % pk


def _component_signature(c: JordanComponent) -> int:
    if c.p == 2:
        if c.kind == "u":
            return 0
        if c.kind == "v":
            return 4 if c.k % 2 else 0
        theta = c.unit % 8
        return (theta + (4 * c.k if theta in (3, 5) else 0)) % 8
    if c.k % 2 == 0:
        return 0
    # q(x) = 2w / p^k; the Gauss sum is (w/p) * eps_p
    w = (c.unit * pow(2, -1, c.p)) % c.p
    s = 0 if c.p % 4 == 1 else 2
    if legendre_symbol(w, c.p) == -1:
        s += 4
    return s


def even_lattice_exists(t_plus: int, t_minus: int, q: FiniteQuadraticForm) -> bool:
    """Existence of an even lattice with signature ``(t+, t-)`` and form ``q``.

    Local criterion: signature congruence, a length bound, and for every
    prime where the rank equals the length of the ``p``-part a condition on
    the determinant of the ``p``-adic lattice realising ``q_p``.
    """
    if t_plus < 0 or t_minus < 0:
        return False
    if (t_plus - t_minus - q.signature) % 8:
        return False
    rank = t_plus + t_minus
    if rank < q.length:
        return False
    size = q.size
    for p in q.primes:
        if rank != q.p_length(p):
            continue
        m = size
        while m % p == 0:
            m //= p
        if p == 2:
            if q.has_odd_order_two_summand():
                continue
            u = q.discr_unit(2)
            if (m % 8) not in (u % 8, (-u) % 8):
                return False
        else:
            lhs = legendre_symbol(((-1) ** t_minus * m) % p, p)
            if lhs != q.discr_unit(p):
                return False
    return True


def form_from_gram(gram: Sequence[Sequence[int]]) -> FiniteQuadraticForm:
    from .lattice import discriminant_form_of_gram

    return discriminant_form_of_gram(gram)


def is_isomorphic(a: FiniteQuadraticForm, b: FiniteQuadraticForm) -> bool:
    """Brute-force isometry test for small forms."""
    if sorted(a.orders) != sorted(b.orders):
        # compare the abstract group structure via element orders
        from collections import Counter

        if a.size != b.size:
            return False
        ca = Counter(a.element_order(c) for c in a.elements())
        cb = Counter(b.element_order(c) for c in b.elements())
        if ca != cb:
            return False
    elems_b = list(b.elements())
    by_order: Dict[Tuple[int, mpq], List[Element]] = {}
    for c in elems_b:
        by_order.setdefault((b.element_order(c), b.q(c)), []).append(c)
    n = a.length
    gens = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    images: List[Element] = []

    def ok(k):
        for i in range(k + 1):
            if a.b(gens[i], gens[k]) != b.b(images[i], images[k]):
                return False
        return True

    def rec(k):
        if k == n:
            # images must generate the whole group
            span = {tuple(0 for _ in b.orders)}
            for img in images:
                mult = []
                cur = tuple(0 for _ in b.orders)
                while True:
                    mult.append(cur)
                    cur = b.add(cur, img)
                    if not any(cur):
                        break
                span = {b.add(s, m) for s in span for m in mult}
            return len(span) == b.size
        key = (a.orders[k], a.q(gens[k]))
        for cand in by_order.get(key, []):
            images.append(cand)
            if ok(k) and rec(k + 1):
                return True
            images.pop()
        return False

    return rec(0)
