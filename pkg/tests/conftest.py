import random

from fractions import Fraction

from barchow.exactlin import ChainMap, Complex, GradedSpace, ONE, ZERO


def random_complex(rng: random.Random, max_dim: int = 6, degree_span=(-2, 3)) -> Complex:
    """Random finite complex with exact d^2 = 0.

    Built as a direct sum of interval complexes (x -> y) and isolated
    points, then conjugated by a random degree-preserving invertible
    change of basis, which preserves d^2 = 0 while scrambling entries.
    """
    basis = []
    d_entries = {}
    n = rng.randint(1, max_dim)
    i = 0
    while len(basis) < n:
        deg = rng.randint(*degree_span)
        if rng.random() < 0.5 and len(basis) + 2 <= max_dim:
            a, b = f"x{i}", f"y{i}"
            basis.append((a, deg))
            basis.append((b, deg + 1))
            d_entries[a] = {b: Fraction(rng.randint(1, 3))}
        else:
            basis.append((f"p{i}", deg))
        i += 1
    space = GradedSpace(basis)
    d = ChainMap(space, space, 1, d_entries)
    # degree-preserving change of basis: unipotent shears
    labels_by_deg = {}
    for l, deg in basis:
        labels_by_deg.setdefault(deg, []).append(l)
    p_entries = {l: {l: ONE} for l, _ in basis}
    for deg, labels in labels_by_deg.items():
        for _ in range(len(labels)):
            a, b = rng.choice(labels), rng.choice(labels)
            if a != b:
                p_entries[a][b] = p_entries[a].get(b, ZERO) + rng.randint(-2, 2)
    p = ChainMap(space, space, 0, p_entries)
    pinv = invert(p)
    d2 = p.then(d).then(pinv)
    return Complex(space, d2)


def invert(p: ChainMap) -> ChainMap:
    """Inverse of an invertible degree-0 map (exact Gauss-Jordan)."""
    from barchow.exactlin import row_reduce

    labels = [l for l, _ in p.source.basis]
    n = len(labels)
    idx = {l: i for i, l in enumerate(labels)}
    aug = [[ZERO] * (2 * n) for _ in range(n)]
    for j, l in enumerate(labels):
        for t, c in p.entries.get(l, {}).items():
            aug[idx[t]][j] = c
        aug[j][n + j] = ONE
    pivots = row_reduce(aug)
    assert pivots == list(range(n)), "matrix not invertible"
    entries = {}
    for j, l in enumerate(labels):
        col = {}
        for i in range(n):
            if aug[i][n + j]:
                col[labels[i]] = aug[i][n + j]
        entries[l] = col
    return ChainMap(p.source, p.source, 0, entries)
