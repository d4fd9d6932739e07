"""Independent oracles shared by the unit and acceptance tests."""

from itertools import product

from k3frag import exact
from k3frag.lattice import PolarizedLattice, vectors_with


def box_vectors(lat: PolarizedLattice, norm: int, pairing: int, bound: int):
    """Brute force over the box ``|x_i| <= bound``; the last coordinate is solved from the pairing."""
    n = lat.rank
    gh = lat.gram_h
    out = set()
    last = gh[-1]
    for head in product(range(-bound, bound + 1), repeat=n - 1):
        rest = pairing - sum(a * b for a, b in zip(head, gh))
        if last == 0:
            cands = range(-bound, bound + 1) if rest == 0 else ()
        elif rest % last:
            cands = ()
        else:
            cands = (rest // last,)
        for t in cands:
            if abs(t) > bound:
                continue
            x = head + (t,)
            if lat.dot(x, x) == norm:
                out.add(x)
    return out


def vectors_match_box(lat: PolarizedLattice, norm: int, pairing: int, floor: int = 3) -> bool:
    got = vectors_with(lat, norm, pairing)
    if len(set(got)) != len(got):
        return False
    for x in got:
        if lat.dot(x, x) != norm or lat.pairing(x) != pairing:
            return False
    bound = max([floor] + [max(map(abs, x)) for x in got])
    return set(got) == box_vectors(lat, norm, pairing, bound)


def random_symmetric(rng, n: int, lo: int = -5, hi: int = 5):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(lo, hi)
    return m


def inertia_agreement(rng, trials: int, max_dim: int = 12) -> int:
    """Number of random symmetric matrices where the two inertia methods differ."""
    bad = 0
    for _ in range(trials):
        n = rng.randint(1, max_dim)
        m = random_symmetric(rng, n)
        # sprinkle in rank deficiency
        if rng.random() < 0.3:
            k = rng.randrange(n)
            for i in range(n):
                m[i][k] = m[k][i] = 0
        if exact.inertia(m) != exact.inertia_by_charpoly(m):
            bad += 1
    return bad


def milgram_holds(lat: PolarizedLattice) -> bool:
    from k3frag.lattice import discriminant_form
    q = discriminant_form(lat)
    pos, neg, _ = lat.signature
    want = (pos - neg) % 8
    return q.gauss_sum_signature() == want and q.signature == want


def extension_identity(lat: PolarizedLattice, m=None) -> int:
    """Check ``[N' : N]^2 |det N'| = |det N|`` on every kernel; returns the number checked."""
    from k3frag.lattice import finite_index_extensions
    n = 0
    for kernel, new, _ in finite_index_extensions(lat, m):
        index = 1
        if kernel:
            from k3frag.lattice import discriminant_form
            q = discriminant_form(lat)
            span = {tuple(0 for _ in q.orders)}
            for g in kernel:
                span = {q.add(s, tuple(k * c for c in g)) for s in span for k in range(q.element_order(g))}
            index = len(span)
        if index * index * abs(new.determinant) != abs(lat.determinant):
            raise AssertionError(f"extension identity fails for kernel {kernel}")
        n += 1
    return n
