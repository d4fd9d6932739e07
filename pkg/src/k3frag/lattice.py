"""Polarized even lattices: short vectors, admissibility, extensions.

A polarized lattice is a nondegenerate even integral lattice of signature
``(1, r-1)`` given by a Gram matrix in some basis, together with the
coordinates of a distinguished vector ``h`` with ``h^2 = 2d > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from gmpy2 import isqrt, mpq

from . import exact
from .discriminant import FiniteQuadraticForm, even_lattice_exists

Vector = Tuple[int, ...]

K3_RANK = 22
K3_SIGNATURE = (3, 19)


@dataclass(frozen=True)
class LatticeVector:
    coords: Vector
    norm: int
    pairing: int


@dataclass(eq=False)
class PolarizedLattice:
    gram: Tuple[Tuple[int, ...], ...]
    h: Vector
    _cache: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.gram = tuple(tuple(int(x) for x in r) for r in self.gram)
        self.h = tuple(int(x) for x in self.h)
        if not exact.is_symmetric(self.gram):
            raise ValueError("Gram matrix is not symmetric")
        if any(self.gram[i][i] % 2 for i in range(len(self.gram))):
            raise ValueError("lattice is not even")
        if self.h_norm <= 0:
            raise ValueError("polarization must have positive square")

    # basic invariants -----------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def gram_h(self) -> Vector:
        return tuple(exact.matvec(self.gram, self.h))

    @cached_property
    def h_norm(self) -> int:
        return sum(a * b for a, b in zip(self.h, exact.matvec(self.gram, self.h)))

    @property
    def degree(self) -> int:
        return self.h_norm

    @cached_property
    def determinant(self) -> int:
        return exact.det(self.gram)

    @cached_property
    def signature(self) -> Tuple[int, int, int]:
        return exact.inertia(self.gram)

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram
        return sum(xi * sum(gr[j] * y[j] for j in range(len(y)) if y[j])
                   for xi, gr in zip(x, g) if xi)

    def pairing(self, x: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(x, self.gram_h))

    # short vectors ------------------------------------------------------------
    @cached_property
    def _majorant(self):
        """Integer positive definite form ``P(x) = (x.h)^2 - d x^2``.

        On vectors with ``x.h = a`` and ``x^2 = n`` it takes the value
        ``a^2 - d n``, so the vectors with prescribed norm and pairing lie in
        a ball of ``P``.
        """
        d = self.h_norm // 2 if self.h_norm % 2 == 0 else None
        if d is None:
            raise ValueError("polarization must have even square")
        if self.signature != (1, self.rank - 1, 0):
            raise ValueError("lattice is not hyperbolic")
        gh = self.gram_h
        n = self.rank
        p = [[gh[i] * gh[j] - d * self.gram[i][j] for j in range(n)] for i in range(n)]
        return d, _ldl(p)

    def iter_majorant_ball(self, radius: int) -> Iterator[LatticeVector]:
        """Yield one of ``+-x`` for every nonzero ``x`` with ``P(x) <= radius``."""
        d, q = self._majorant
        for x in _fincke_pohst(q, radius):
            a = self.pairing(x)
            p_val = self._p_value(x, a, d)
            # x^2 = (a^2 - P)/d
            n2 = (a * a - p_val) // d
            if a < 0 or (a == 0 and _first_nonzero_negative(x)):
                x = tuple(-c for c in x)
                a = -a
            yield LatticeVector(x, n2, a)

    def _p_value(self, x, a, d):
        return a * a - d * self.dot(x, x)

    def ball(self, radius: int) -> List[LatticeVector]:
        key = ("ball", radius)
        if key not in self._cache:
            # reuse a larger cached ball when available
            bigger = [r for (tag, r) in self._cache if tag == "ball" and r >= radius]
            if bigger:
                d = self.h_norm // 2
                src = self._cache[("ball", min(bigger))]
                self._cache[key] = [v for v in src
                                    if v.pairing ** 2 - d * v.norm <= radius]
            else:
                self._cache[key] = list(self.iter_majorant_ball(radius))
        return self._cache[key]


def _first_nonzero_negative(x) -> bool:
    for c in x:
        if c:
            return c < 0
    return False


def _ldl(p: List[List[int]]):
    """Quadratic completion ``x^T p x = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2``."""
    n = len(p)
    q = [[mpq(x) for x in row] for row in p]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _fincke_pohst(q, radius: int) -> Iterator[Vector]:
    """Nonzero integer vectors with ``x^T P x <= radius``, one per sign pair.

    Exact rational arithmetic throughout; the sign is normalised so that the
    last nonzero coordinate is positive.
    """
    n = len(q)
    if n == 0:
        return
    x = [0] * n
    diag = [q[i][i] for i in range(n)]
    coefs = [[(j, q[i][j]) for j in range(i + 1, n)] for i in range(n)]

    def ranges(i, rem, top):
        c = mpq(0)
        for j, qij in coefs[i]:
            if x[j]:
                c += qij * x[j]
        t = rem / diag[i]
        s = int(isqrt(t.numerator * t.denominator) // t.denominator)
        centre = -c
        lo = int(_floor(centre)) - s - 1
        hi = int(_floor(centre)) + s + 2
        if top:
            lo = max(lo, 0)
        out = []
        for z in range(lo, hi + 1):
            v = z + c
            val = diag[i] * v * v
            if val <= rem:
                out.append((z, rem - val))
        return out

    # explicit depth-first search: each frame holds its candidate list
    frames = [ranges(n - 1, mpq(radius), True)]
    levels = [n - 1]
    tops = [True]
    while frames:
        cand = frames[-1]
        i = levels[-1]
        if not cand:
            frames.pop()
            levels.pop()
            tops.pop()
            if i < n:
                x[i] = 0
            continue
        z, rem = cand.pop()
        x[i] = z
        top = tops[-1] and z == 0
        if i == 0:
            if not top:
                yield tuple(x)
            continue
        frames.append(ranges(i - 1, rem, top))
        levels.append(i - 1)
        tops.append(top)


def _floor(v: mpq) -> int:
    return v.numerator // v.denominator


# ---------------------------------------------------------------------------
# vectors with given norm and pairing


def vectors_with(lat: PolarizedLattice, norm: int, pairing: int) -> List[Vector]:
    """All ``x`` with ``x^2 = norm`` and ``x.h = pairing``."""
    d = lat.h_norm // 2
    radius = pairing * pairing - d * norm
    if radius < 0:
        return []
    out = []
    for v in lat.ball(radius):
        if v.norm != norm:
            continue
        if v.pairing == pairing:
            out.append(v.coords)
        if v.pairing == -pairing:
            out.append(tuple(-c for c in v.coords))
    if norm == 0 and pairing == 0:
        out.append(tuple(0 for _ in range(lat.rank)))
    return out


@dataclass(frozen=True)
class AdmissibilityWitness:
    kind: str  # "exceptional" or "isotropic"
    vector: Vector
    pairing: int


def admissibility_witness(lat: PolarizedLattice, m: int = 2) -> Optional[AdmissibilityWitness]:
    """Return an exceptional or ``r``-isotropic vector (``1 <= r <= m``)."""
    d = lat.h_norm // 2
    radius = max(2 * d, m * m)
    cached = [r for (tag, r) in lat._cache if tag == "ball" and r >= radius]
    if cached:
        source = lat.ball(radius)
    else:
        source = lat.iter_majorant_ball(radius)
    for v in source:
        if v.norm == -2 and v.pairing == 0:
            return AdmissibilityWitness("exceptional", v.coords, 0)
        if v.norm == 0 and 1 <= v.pairing <= m:
            return AdmissibilityWitness("isotropic", v.coords, v.pairing)
    return None


def is_m_admissible(lat: PolarizedLattice, m: int = 2) -> bool:
    return admissibility_witness(lat, m) is None


def lines(lat: PolarizedLattice) -> List[Vector]:
    """Vectors ``u`` with ``u^2 = -2`` and ``u.h = 1``."""
    return vectors_with(lat, -2, 1)


# ---------------------------------------------------------------------------
# discriminant forms and extensions


def discriminant_form(lat: PolarizedLattice) -> FiniteQuadraticForm:
    """Discriminant form of the lattice with generators in dual coordinates."""
    return discriminant_form_of_gram(lat.gram)


def discriminant_form_of_gram(gram) -> FiniteQuadraticForm:
    det = exact.det(gram)
    if det == 0:
        raise ValueError("degenerate lattice")
    d, v = exact.smith_form_mod(gram, det)
    n = len(gram)
    gens = []
    orders = []
    for i in range(n):
        di = d[i]
        if di > 1:
            orders.append(di)
            gens.append(tuple(mpq(v[k][i] % di, di) for k in range(n)))
    g = exact.matmul(gens, exact.matmul(gram, exact.transpose(gens))) if gens else []
    return FiniteQuadraticForm(tuple(orders), tuple(tuple(r) for r in g), tuple(gens))


def extension(lat: PolarizedLattice, kernel_vectors: Sequence[Sequence]) -> Tuple[PolarizedLattice, List[List[mpq]]]:
    """Overlattice generated by ``lat`` and the given dual vectors.

    Returns the new lattice and the matrix ``t`` (rows) such that old
    coordinates ``x`` become new coordinates ``x @ t``.
    """
    n = lat.rank
    rows = [[mpq(1 if i == j else 0) for j in range(n)] for i in range(n)]
    rows += [[mpq(c) for c in k] for k in kernel_vectors]
    basis = exact.hermite_basis(rows)
    if len(basis) != n:
        raise ValueError("extension changed the rank")
    gram = exact.matmul(basis, exact.matmul(lat.gram, exact.transpose(basis)))
    if any(x.denominator != 1 for r in gram for x in r):
        raise ValueError("extension is not integral")
    gram = [[int(x) for x in r] for r in gram]
    if any(gram[i][i] % 2 for i in range(n)):
        raise ValueError("extension is not even")
    inv = exact.rational_inverse(basis)
    h_new = [sum(mpq(lat.h[i]) * inv[i][j] for i in range(n)) for j in range(n)]
    if any(x.denominator != 1 for x in h_new):
        raise ValueError("polarization not integral in the extension")
    return PolarizedLattice(gram, tuple(int(x) for x in h_new)), inv


def finite_index_extensions(lat: PolarizedLattice, m: Optional[int] = None,
                             keep=None) -> List[Tuple[Tuple, PolarizedLattice, List]]:
    """All even overlattices, one per isotropic subgroup of the discriminant.

    Returns ``(kernel, lattice, transform)`` triples; the trivial kernel comes
    first. With ``m`` only ``m``-admissible overlattices are returned; since
    an overlattice of a non-admissible lattice is not admissible either,
    such kernels are pruned while the subgroups are generated. ``keep(new,
    t)`` is an additional filter that must be inherited by sublattices in
    the same way.
    """
    q = discriminant_form(lat)
    built: Dict[Tuple, Tuple[PolarizedLattice, List]] = {}

    def build(sub):
        if sub not in built:
            built[sub] = extension(lat, [q.vector(c) for c in sub])
        return built[sub]

    verdict: Dict[Tuple, bool] = {}

    def admissible(sub):
        if sub not in verdict:
            new, t = build(sub) if sub else (lat, None)
            ok = m is None or is_m_admissible(new, m)
            verdict[sub] = ok and (keep is None or keep(new, t))
        return verdict[sub]

    accept = None
    if m is not None or keep is not None:
        def accept(sub):
            return admissible(tuple(sub))
    out = []
    for sub in q.isotropic_subgroups(accept):
        sub = tuple(sub)
        if accept is not None and not admissible(sub):
            continue
        if not sub:
            out.append(((), lat, None))
            continue
        new, t = build(sub)
        out.append((tuple(tuple(c) for c in sub), new, t))
    return out


# ---------------------------------------------------------------------------
# primitive embeddings into the K3 lattice


YES, NO, UNKNOWN = "yes", "no", "unknown"


def embeds_in_k3(lat: PolarizedLattice) -> str:
    """Existence of a primitive embedding into ``2E8 + 3U``.

    Lattices of rank at most 11 always embed. Otherwise the orthogonal
    complement must be an even lattice of signature ``(2, 20 - r)`` with
    discriminant form ``-q``; its existence is decided by the local
    conditions in :func:`even_lattice_exists`.
    """
    r = lat.rank
    if lat.signature != (1, r - 1, 0):
        return NO
    if r > 20:
        return NO
    if r <= 11:
        return YES
    q = discriminant_form(lat)
    return YES if even_lattice_exists(2, 20 - r, q.negate()) else NO


def is_geometric(lat: PolarizedLattice, m: int = 2) -> bool:
    return is_m_admissible(lat, m) and embeds_in_k3(lat) == YES


def geometric_extensions(lat: PolarizedLattice, m: int = 2):
    """Finite index extensions that are ``m``-geometric."""
    if lat.signature != (1, lat.rank - 1, 0) or lat.rank > 20:
        return []
    if not is_m_admissible(lat, m):
        return []
    out = []
    for kernel, new, t in finite_index_extensions(lat, m):
        if embeds_in_k3(new) == YES:
            out.append((kernel, new, t))
    return out


def is_subgeometric(lat: PolarizedLattice, m: int = 2) -> bool:
    if lat.signature != (1, lat.rank - 1, 0) or lat.rank > 20:
        return False
    if not is_m_admissible(lat, m):
        return False
    if embeds_in_k3(lat) == YES:
        return True
    for kernel, new, _ in finite_index_extensions(lat, m):
        if kernel and embeds_in_k3(new) == YES:
            return True
    return False
