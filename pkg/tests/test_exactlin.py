import random

from fractions import Fraction

import pytest

from barchow.exactlin import (
    ChainMap,
    Complex,
    DoubleComplex,
    GradedSpace,
    ONE,
    cohomology,
    euler_characteristic,
    hom_differential,
    simple_complex,
    tensor,
    transpose,
)
from conftest import random_complex


def interval(deg=0):
    """Complex x -> y with x in the given degree."""
    sp = GradedSpace([("x", deg), ("y", deg + 1)])
    return Complex(sp, ChainMap(sp, sp, 1, {"x": {"y": ONE}}))


def test_tensor_unit():
    unit = Complex.point()
    c = interval()
    t = tensor(unit, c)
    # same differential matrix under ('1', l) <-> l
    for l, _ in c.space.basis:
        col = t.differential.entries.get(("1", l), {})
        want = {("1", k): v for k, v in c.differential.entries.get(l, {}).items()}
        assert col == want


def test_tensor_cycles_of_degree_one():
    sp = GradedSpace([("x", 1)])
    c = Complex.zero_diff(sp)
    t = tensor(c, c)
    assert t.differential.is_zero()


def test_tensor_koszul_sign():
    # K = k e in degree -1 with d = 0, L: v -> w; d(e (x) v) = -e (x) w
    k = Complex.zero_diff(GradedSpace([("e", -1)]))
    sp = GradedSpace([("v", 0), ("w", 1)])
    l = Complex(sp, ChainMap(sp, sp, 1, {"v": {"w": ONE}}))
    t = tensor(k, l)
    assert t.differential.entries[("e", "v")] == {("e", "w"): -ONE}


def test_transpose_signs():
    a = Complex.zero_diff(GradedSpace([("x0", 0), ("x1", 1)]))
    s = transpose(a, a)
    assert s.entries[("x0", "x0")] == {("x0", "x0"): ONE}
    assert s.entries[("x1", "x1")] == {("x1", "x1"): -ONE}
    assert s.entries[("x0", "x1")] == {("x1", "x0"): ONE}


@pytest.mark.parametrize("seed", range(12))
def test_transpose_involution_and_chain_map(seed):
    rng = random.Random(seed)
    a = random_complex(rng)
    b = random_complex(rng)
    s = transpose(a, b)
    s_back = transpose(b, a)
    assert s.then(s_back).equal(ChainMap.identity(a.space.tensor(b.space)))
    # chain map: D(sigma) = 0
    ab = tensor(a, b)
    ba = tensor(b, a)
    assert hom_differential(s, ab.differential, ba.differential).is_zero()


@pytest.mark.parametrize("seed", range(8))
def test_tensor_associative(seed):
    rng = random.Random(seed)
    a, b, c = (random_complex(rng, max_dim=4) for _ in range(3))
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    for (la, lb), dab in left.space.basis:
        # association bijection ((x,y),z) -> (x,(y,z))
        (x, y), z = la, lb
        col = left.differential.entries.get(((x, y), z), {})
        want = right.differential.entries.get((x, (y, z)), {})
        col_moved = {(p, (q, r)): v for ((p, q), r), v in col.items()}
        assert col_moved == want


def test_simple_complex_single_column():
    c = interval()
    dc = DoubleComplex({0: c}, {})
    s = simple_complex(dc)
    assert s.space.dim == 2
    assert s.differential.entries[(0, "x")] == {(0, "y"): ONE}


def test_simple_complex_2x2():
    # two columns k -> k (identity horizontal), each column k in degrees 0,1
    sp = GradedSpace([("a", 0), ("b", 1)])
    col = Complex(sp, ChainMap(sp, sp, 1, {"a": {"b": ONE}}))
    h = ChainMap.identity(sp)
    dc = DoubleComplex({0: col, 1: col}, {0: h})
    s = simple_complex(dc)
    d = s.differential
    assert d.then(d).is_zero()
    # outer differential twisted by (-1)^inner
    assert d.entries[(0, "a")] == {(0, "b"): ONE, (1, "a"): ONE}
    assert d.entries[(0, "b")] == {(1, "b"): -ONE}


def test_simple_complex_rejects_non_double():
    sp = GradedSpace([("a", 0), ("b", 1)])
    col = Complex(sp, ChainMap(sp, sp, 1, {"a": {"b": ONE}}))
    bad_h = ChainMap(sp, sp, 0, {"a": {"a": ONE}})  # does not commute with d
    with pytest.raises(ValueError):
        DoubleComplex({0: col, 1: col}, {0: bad_h})


def tensor_double(k_cols, k_hor, l_cols, l_hor):
    """Tensor double complex: plain inner tensor, (-1)^i twist on 1(x)h_L."""
    cols = {}
    hors = {}
    kis = sorted(k_cols)
    lis = sorted(l_cols)
    for i in kis:
        for j in lis:
            m = i + j
            t = tensor(k_cols[i], l_cols[j])
            # relabel with the column pair baked in
            basis = [(((i, a), (j, b)), d) for (a, b), d in t.space.basis]
            sp = GradedSpace(basis)
            entries = {}
            for (a, b), col in t.differential.entries.items():
                entries[((i, a), (j, b))] = {((i, p), (j, q)): v for (p, q), v in col.items()}
            if m not in cols:
                cols[m] = (sp, entries)
            else:
                sp0, e0 = cols[m]
                sp = GradedSpace(sp0.basis + basis)
                e0.update(entries)
                cols[m] = (sp, e0)
    built = {m: Complex(sp, ChainMap(sp, sp, 1, e, check=False)) for m, (sp, e) in cols.items()}
    for m in sorted(built):
        if m + 1 not in built:
            continue
        entries = {}
        for ((i, a), (j, b)), d in built[m].space.basis:
            col = {}
            h = k_hor.get(i)
            if h is not None:
                for t, c in h.entries.get(a, {}).items():
                    col[((i + 1, t), (j, b))] = c
            h = l_hor.get(j)
            if h is not None:
                sgn = -ONE if i % 2 else ONE
                for t, c in h.entries.get(b, {}).items():
                    col[((i, a), (j + 1, t))] = col.get(((i, a), (j + 1, t)), Fraction(0)) + sgn * c
            col = {k: v for k, v in col.items() if v}
            if col:
                entries[((i, a), (j, b))] = col
        hors[m] = ChainMap(built[m].space, built[m + 1].space, 0, entries, check=False)
    return DoubleComplex(built, hors)


@pytest.mark.parametrize("seed", range(6))
def test_simple_of_tensor_is_tensor_of_simples(seed):
    rng = random.Random(100 + seed)
    k_cols = {i: random_complex(rng, max_dim=3, degree_span=(0, 2)) for i in range(2)}
    l_cols = {j: random_complex(rng, max_dim=3, degree_span=(0, 2)) for j in range(2)}

    def hmap(c0, c1):
        # a chain map c0 -> c1 commuting with differentials: use zero map
        # except matched interval generators; zero always commutes.
        return ChainMap.zero(c0.space, c1.space, 0)

    k_hor = {0: hmap(k_cols[0], k_cols[1])}
    l_hor = {0: hmap(l_cols[0], l_cols[1])}
    kl = tensor_double(k_cols, k_hor, l_cols, l_hor)
    s_kl = simple_complex(kl)
    sk = simple_complex(DoubleComplex(k_cols, k_hor))
    sl = simple_complex(DoubleComplex(l_cols, l_hor))
    sksl = tensor(sk, sl)
    # canonical pairing (m, ((i,a),(j,b))) -> ((i,a),(j,b)) with the
    # shift-redistribution sign (-1)^(i * deg b)
    for (m, ((i, a), (j, b))), dtot in s_kl.space.basis:
        db = l_cols[j].space.degree[b]
        sgn_src = -ONE if (i * db) % 2 else ONE
        col = s_kl.differential.entries.get((m, ((i, a), (j, b))), {})
        moved = {}
        for (m2, ((i2, a2), (j2, b2))), v in col.items():
            db2 = l_cols[j2].space.degree[b2]
            sgn_tgt = -ONE if (i2 * db2) % 2 else ONE
            moved[((i2, a2), (j2, b2))] = v * sgn_src * sgn_tgt
        want = sksl.differential.entries.get(((i, a), (j, b)), {})
        assert moved == want, (m, i, a, j, b)


def test_cohomology_zero_differential():
    sp = GradedSpace([(f"v{i}", 0) for i in range(4)])
    c = Complex.zero_diff(sp)
    dim, reps = cohomology(c, 0)
    assert dim == 4
    assert len(reps) == 4


def test_cohomology_acyclic_cone():
    c = interval()
    assert cohomology(c, 0)[0] == 0
    assert cohomology(c, 1)[0] == 0


def test_cohomology_exterior_algebra():
    # exterior algebra on one degree-1 generator, zero differential
    sp = GradedSpace([("1", 0), ("x", 1)])
    c = Complex.zero_diff(sp)
    assert cohomology(c, 0)[0] == 1
    assert cohomology(c, 1)[0] == 1


@pytest.mark.parametrize("seed", range(10))
def test_euler_characteristic(seed):
    rng = random.Random(200 + seed)
    c = random_complex(rng)
    chi = 0
    for d in range(min(c.space.degrees()) - 1, max(c.space.degrees()) + 2):
        h, _ = cohomology(c, d)
        chi += h if d % 2 == 0 else -h
    assert chi == euler_characteristic(c)
