"""Exact integer and rational linear algebra.

Everything here works on plain nested lists of Python ints (or gmpy2 rationals
internally), so results are exact for arbitrarily large entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from gmpy2 import mpq

Matrix = List[List[int]]


def to_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, r)) for r in rows]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(r) == n for r in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i)
    )


# ---------------------------------------------------------------------------
# inertia


def inertia(m: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """Return ``(n_plus, n_minus, n_zero)`` of a symmetric rational matrix.

    Symmetric Gaussian elimination (congruence) over Q. When every remaining
    diagonal entry vanishes a hyperbolic 2x2 pivot is split off instead.
    """
    if not is_symmetric(m):
        raise ValueError("inertia: matrix is not symmetric")
    a = [[mpq(x) for x in row] for row in m]
    pos = neg = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is not None:
            p = a[piv][piv]
            if p > 0:
                pos += 1
            else:
                neg += 1
            row = a[piv]
            rest = [i for i in range(n) if i != piv]
            new = []
            for i in rest:
                f = a[i][piv] / p
                ai = a[i]
                if f:
                    new.append([ai[j] - f * row[j] for j in rest])
                else:
                    new.append([ai[j] for j in rest])
            a = new
            continue
        pair = next(
            ((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0),
            None,
        )
        if pair is None:
            return pos, neg, n
        # a block [[0, c], [c, 0]] has inertia (1, 1); eliminate it
        i, j = pair
        c = a[i][j]
        pos += 1
        neg += 1
        rest = [k for k in range(n) if k not in (i, j)]
        new = []
        for k in rest:
            # Schur complement with block inverse [[0, 1/c], [1/c, 0]]
            xk, yk = a[k][i], a[k][j]
            new.append(
                [
                    a[k][l] - (xk * a[j][l] + yk * a[i][l]) / c
                    for l in rest
                ]
            )
        a = new
    return pos, neg, 0


def charpoly(m: Sequence[Sequence[int]]) -> List[int]:
    """Characteristic polynomial ``det(xI - m)`` of an integer matrix.

    Coefficients are returned lowest degree first. Uses a Hessenberg
    reduction over Q, which is independent of the congruence method above.
    """
    n = len(m)
    h = [[mpq(x) for x in row] for row in m]
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if h[i][k - 1] != 0), None)
        if piv is None:
            continue
        if piv != k:
            h[k], h[piv] = h[piv], h[k]
            for row in h:
                row[k], row[piv] = row[piv], row[k]
        p = h[k][k - 1]
        for i in range(k + 1, n):
            f = h[i][k - 1] / p
            if f:
                hi, hk = h[i], h[k]
                for j in range(n):
                    hi[j] -= f * hk[j]
                for row in h:
                    row[k] += f * row[i]
    # recurrence for the characteristic polynomials of leading blocks
    polys = [[mpq(1)]]
    for k in range(n):
        cur = [mpq(0)] + polys[k]
        for i in range(len(polys[k])):
            cur[i] -= h[k][k] * polys[k][i]
        prod = mpq(1)
        for i in range(k - 1, -1, -1):
            prod *= h[i + 1][i]
            if prod == 0:
                break
            coef = prod * h[i][k]
            for t, c in enumerate(polys[i]):
                cur[t] -= coef * c
        polys.append(cur)
    out = polys[n]
    assert all(c.denominator == 1 for c in out)
    return [int(c) for c in out]


def inertia_by_charpoly(m: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """Inertia from sign changes of the characteristic polynomial.

    A symmetric matrix has only real eigenvalues, so Descartes' rule of signs
    is exact.
    """
    c = charpoly(m)
    zero = next(i for i, x in enumerate(c) if x != 0)
    c = c[zero:]

    def changes(seq):
        s = [x for x in seq if x != 0]
        return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))

    pos = changes(c)
    neg = changes([x if i % 2 == 0 else -x for i, x in enumerate(c)])
    return pos, neg, zero


# ---------------------------------------------------------------------------
# determinants and ranks


def det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    a = [[mpq(x) for x in r] for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                ai, ar = a[i], a[r]
                for j in range(c, cols):
                    ai[j] -= f * ar[j]
        r += 1
        if r == rows:
            break
    return r


# ---------------------------------------------------------------------------
# integer normal forms


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_echelon(m: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, int]:
    """Integer column echelon form.

    Returns ``(e, v, k)`` with ``e = m @ v``, ``v`` unimodular, and the first
    ``k`` columns of ``e`` independent while the remaining columns vanish.
    """
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    v = identity(cols)
    c = 0
    for r in range(rows):
        if c == cols:
            break
        for j in range(c + 1, cols):
            if a[r][j] == 0:
                continue
            x, y = a[r][c], a[r][j]
            g, s, t = _xgcd(x, y)
            # [col_c, col_j] <- [s*col_c + t*col_j, -(y/g)*col_c + (x/g)*col_j]
            p, q = -y // g, x // g
            for mat in (a, v):
                for row in mat:
                    u, w = row[c], row[j]
                    row[c] = s * u + t * w
                    row[j] = p * u + q * w
        if a[r][c] != 0:
            if a[r][c] < 0:
                for mat in (a, v):
                    for row in mat:
                        row[c] = -row[c]
            c += 1
    return a, v, c


def kernel_basis(m: Sequence[Sequence[int]]) -> Matrix:
    """Basis (as rows) of the saturated integer kernel ``{x : m x = 0}``."""
    if not m:
        return []
    _, v, k = column_echelon(m)
    cols = len(v)
    return [[v[i][j] for i in range(cols)] for j in range(k, cols)]


def inverse_unimodular(v: Sequence[Sequence[int]]) -> Matrix:
    inv = rational_inverse(v)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def rational_inverse(m: Sequence[Sequence]) -> List[List[mpq]]:
    n = len(m)
    a = [[mpq(x) for x in r] + [mpq(1 if i == j else 0) for j in range(n)]
         for i, r in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                ai, ac = a[i], a[c]
                a[i] = [x - f * y for x, y in zip(ai, ac)]
    return [r[n:] for r in a]


def solve_rational(m: Sequence[Sequence], b: Sequence) -> List[mpq]:
    """Solve ``m x = b`` for square nonsingular ``m``."""
    inv = rational_inverse(m)
    return [sum((x * mpq(y) for x, y in zip(row, b)), mpq(0)) for row in inv]


def smith_normal_form(m: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Return ``(d, u, v)`` with ``u @ m @ v == d`` diagonal.

    ``u`` and ``v`` are unimodular and the diagonal satisfies
    ``d[i][i] | d[i+1][i+1]`` with non-negative entries.
    """
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for mat in (a, v):
            for row in mat:
                row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows)
              for j in range(t, cols) if a[i][j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, rows)
                        for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def smith_form_mod(m: Sequence[Sequence[int]], modulus: int) -> Tuple[List[int], Matrix]:
    """Invariant factors of a nonsingular ``m`` and the column transform mod ``modulus``.

    ``modulus`` must be a multiple of ``|det m|``. All arithmetic is done
    modulo it, which keeps the entries bounded. Returns ``(d, v)`` where
    ``d`` lists the invariant factors and ``m @ v`` has its ``i``-th column
    divisible by ``d[i]`` modulo ``modulus``.
    """
    mod = abs(modulus)
    a = [[int(x) % mod for x in r] for r in m]
    n = len(a)
    v = identity(n)

    def col_op(i, j, s, t, p, q):
        # [col_i, col_j] <- [s col_i + t col_j, p col_i + q col_j]
        for mat in (a, v):
            for row in mat:
                x, y = row[i], row[j]
                row[i] = (s * x + t * y) % mod
                row[j] = (p * x + q * y) % mod

    def row_op(i, j, s, t, p, q):
        ri, rj = a[i], a[j]
        a[i] = [(s * x + t * y) % mod for x, y in zip(ri, rj)]
        a[j] = [(p * x + q * y) % mod for x, y in zip(ri, rj)]

    diag = []
    for k in range(n):
        while True:
            piv = None
            for i in range(k, n):
                for j in range(k, n):
                    if a[i][j] and (piv is None or _gcd(a[i][j], mod) < piv[0]):
                        piv = (_gcd(a[i][j], mod), i, j)
            if piv is None:
                diag.extend([mod] * (n - k))
                return diag, v
            _, i, j = piv
            a[k], a[i] = a[i], a[k]
            if j != k:
                col_op(k, j, 0, 1, 1, 0)
            if a[k][k] != piv[0]:
                # scale the pivot to the gcd with the modulus by a unit
                _, s_, _ = _xgcd(a[k][k], mod)
                unit = s_ % mod
                while _gcd(unit, mod) != 1:
                    unit = (unit + mod // piv[0]) % mod
                a[k] = [(x * unit) % mod for x in a[k]]
            dirty = True
            while dirty:
                dirty = False
                for i in range(k + 1, n):
                    b = a[i][k]
                    if b:
                        if b % a[k][k] == 0:
                            row_op(i, k, 1, -(b // a[k][k]), 0, 1)
                        else:
                            g, s_, t_ = _xgcd(a[k][k], b)
                            row_op(k, i, s_, t_, -b // g, a[k][k] // g)
                for j in range(k + 1, n):
                    b = a[k][j]
                    if b:
                        if b % a[k][k] == 0:
                            col_op(j, k, 1, -(b // a[k][k]), 0, 1)
                        else:
                            g, s_, t_ = _xgcd(a[k][k], b)
                            col_op(k, j, s_, t_, -b // g, a[k][k] // g)
                            dirty = True
            g = _gcd(a[k][k], mod)
            bad = next((i for i in range(k + 1, n)
                        if any(a[i][j] % g for j in range(k + 1, n))), None)
            if bad is None:
                diag.append(g)
                break
            row_op(k, bad, 1, 1, 0, 1)
    return diag, v


def hermite_basis(vectors: Sequence[Sequence]) -> List[List[mpq]]:
    """Basis of the Z-span of rational row vectors (row Hermite form)."""
    vecs = [[mpq(x) for x in v] for v in vectors]
    if not vecs:
        return []
    den = 1
    for v in vecs:
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
    ints = [[int(x * den) for x in v] for v in vecs]
    # row echelon via column echelon of the transpose
    e, _, k = column_echelon(transpose(ints))
    cols = [[e[i][j] for i in range(len(e))] for j in range(k)]
    # reduce each basis vector against the later pivots
    pivots = [next(i for i, x in enumerate(c) if x) for c in cols]
    for j in range(k - 1, -1, -1):
        for t in range(j + 1, k):
            p = pivots[t]
            f = cols[j][p] // cols[t][p]
            if f:
                cols[j] = [a - f * b for a, b in zip(cols[j], cols[t])]
    return [[mpq(x, den) for x in c] for c in cols]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# radical quotient


@dataclass(frozen=True)
class RadicalQuotient:
    """Quotient of ``Z^n`` with a degenerate form by its radical.

    ``kernel`` spans the radical, ``basis`` (rows, in the original
    coordinates) projects to a basis of the quotient, ``gram`` is the induced
    nondegenerate form and ``project(x)`` maps original coordinates to
    quotient coordinates.
    """

    kernel: Tuple[Tuple[int, ...], ...]
    basis: Tuple[Tuple[int, ...], ...]
    gram: Tuple[Tuple[int, ...], ...]
    _proj: Tuple[Tuple[int, ...], ...]

    def project(self, x: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(r[i] * x[i] for i in range(len(x))) for r in self._proj)


def radical_quotient(gram: Sequence[Sequence[int]]) -> RadicalQuotient:
    """Quotient of a possibly degenerate integral form by its radical."""
    n = len(gram)
    _, v, k = column_echelon(gram)
    vinv = inverse_unimodular(v)
    basis = [tuple(v[i][j] for i in range(n)) for j in range(k)]
    kernel = tuple(tuple(v[i][j] for i in range(n)) for j in range(k, n))
    g = tuple(
        tuple(sum(b1[i] * gram[i][j] * b2[j] for i in range(n) for j in range(n)
                  if b1[i] and b2[j]) for b2 in basis)
        for b1 in basis
    )
    proj = tuple(tuple(vinv[j]) for j in range(k))
    return RadicalQuotient(kernel, tuple(basis), g, proj)
