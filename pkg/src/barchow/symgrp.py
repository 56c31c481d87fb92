"""Group algebras of bijections, Young symmetrizers, and decomposition data.

Bijections between finite ordered sets of size n are stored as tuples p
with p[i] = target position of source position i (0-based).  Products in
group algebras are diagrammatic: in ``a * b`` the element ``a`` acts
first.  Under this convention the adjoint map g -> g^{-1} satisfies
(x*y)^adj = y^adj * x^adj.

Evaluation on tensor powers sends a bijection g to the linear map of
W^{(x) n} moving the content of slot i to slot g(i).  The evaluation of a
product is then "a first, b second" as matrices; it is faithful as soon
as n <= dim W.

Littlewood-Richardson multiplicities are computed by symmetric-group
character inner products, with characters from the Murnaghan-Nakayama
rule; this doubles as the oracle for all tensor-decomposition data used
elsewhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Sequence, Tuple

from .exactlin import ChainMap, GradedSpace, ONE, ZERO, Scalar, scalar

Perm = Tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def sign(p: Perm) -> int:
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        ln = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        if ln % 2 == 0:
            s = -s
    return s


def from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """Permutation from 1-based cycles, e.g. from_cycles(3, (1, 2))."""
    out = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
            out[a - 1] = b - 1
    return tuple(out)


def all_perms(n: int):
    return itertools.permutations(range(n))


class GroupAlgebraElement:
    """Rational combination of bijections between two same-size sets."""

    def __init__(self, n: int, terms: Dict[Perm, Fraction] | None = None,
                 source: int = 0, target: int = 0):
        # source/target are opaque tags; 0 means "unnamed copy of [1,n]"
        self.n = n
        self.source = source
        self.target = target
        self.terms: Dict[Perm, Fraction] = {}
        if terms:
            for g, c in terms.items():
                c = scalar(c)
                if c:
                    self.terms[g] = c

    @classmethod
    def unit(cls, n: int) -> "GroupAlgebraElement":
        return cls(n, {identity_perm(n): ONE})

    @classmethod
    def of(cls, n: int, *cycles, coeff=1) -> "GroupAlgebraElement":
        return cls(n, {from_cycles(n, *cycles): scalar(coeff)})

    def __add__(self, other):
        out = dict(self.terms)
        for g, c in other.terms.items():
            x = out.get(g, ZERO) + c
            if x:
                out[g] = x
            else:
                out.pop(g, None)
        return GroupAlgebraElement(self.n, out, self.source, self.target)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c) -> "GroupAlgebraElement":
        c = scalar(c)
        return GroupAlgebraElement(
            self.n, {g: c * x for g, x in self.terms.items()},
            self.source, self.target)

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        """Diagrammatic product: self acts first."""
        if self.n != other.n:
            raise ValueError("size mismatch in group algebra product")
        if self.target != other.source:
            raise ValueError("target/source mismatch in group algebra product")
        out: Dict[Perm, Fraction] = {}
        for g, cg in self.terms.items():
            for h, ch in other.terms.items():
                k = compose(g, h)
                x = out.get(k, ZERO) + cg * ch
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
        return GroupAlgebraElement(self.n, out, self.source, other.target)

    def adjoint(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(
            self.n, {inverse(g): c for g, c in self.terms.items()},
            self.target, self.source)

    def equal(self, other: "GroupAlgebraElement") -> bool:
        return self.n == other.n and (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"GroupAlgebraElement(n={self.n}, {len(self.terms)} terms)"


def multiply(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    return a * b


def adjoint(x: GroupAlgebraElement) -> GroupAlgebraElement:
    return x.adjoint()


# ---------------------------------------------------------------------------
# tableaux and symmetrizers


@dataclass(frozen=True)
class Tableau:
    """Young tableau; rows hold distinct 1-based entries."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        lens = [len(r) for r in self.rows]
        if any(l2 > l1 for l1, l2 in zip(lens, lens[1:])):
            raise ValueError("row lengths must weakly decrease")
        flat = [x for r in self.rows for x in r]
        if len(set(flat)) != len(flat):
            raise ValueError("tableau entries must be distinct")

    @classmethod
    def row_filling(cls, shape: Sequence[int]) -> "Tableau":
        """The standard tableau filling rows with 1..n left to right."""
        rows = []
        k = 1
        for l in shape:
            rows.append(tuple(range(k, k + l)))
            k += l
        return cls(tuple(rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def depth(self) -> int:
        return len(self.rows)

    def columns(self) -> List[Tuple[int, ...]]:
        ncols = len(self.rows[0]) if self.rows else 0
        cols = []
        for c in range(ncols):
            cols.append(tuple(r[c] for r in self.rows if c < len(r)))
        return cols


def _subgroup_sum(n: int, blocks: Iterable[Tuple[int, ...]], signed: bool) -> GroupAlgebraElement:
    """Normalized (signed) sum over the Young subgroup fixing each block."""
    blocks = [b for b in blocks if len(b) > 1]
    order = 1
    for block in blocks:
        order *= factorial(len(block))
    gens: List[List[Perm]] = []
    for block in blocks:
        perms = []
        for p in itertools.permutations(block):
            g = list(range(n))
            for a, b in zip(block, p):
                g[a - 1] = b - 1
            perms.append(tuple(g))
        gens.append(perms)
    terms: Dict[Perm, Fraction] = {}
    for combo in itertools.product(*gens):
        g = identity_perm(n)
        for h in combo:
            g = compose(g, h)
        c = Fraction(sign(g) if signed else 1, order)
        terms[g] = terms.get(g, ZERO) + c
    return GroupAlgebraElement(n, terms)


def row_symmetrizer(y: Tableau) -> GroupAlgebraElement:
    return _subgroup_sum(y.size, y.rows, signed=False)


def column_antisymmetrizer(y: Tableau) -> GroupAlgebraElement:
    return _subgroup_sum(y.size, y.columns(), signed=True)


def young_symmetrizer(y: Tableau) -> Tuple[GroupAlgebraElement, Fraction]:
    """(e, c) with e = row symmetrizer * column antisymmetrizer, e*e = c*e.

    Both factors are normalized by their subgroup orders.  The scalar c
    is found by comparing e*e with e coefficientwise; e/c is a true
    idempotent.
    """
    e = row_symmetrizer(y) * column_antisymmetrizer(y)
    ee = e * e
    g = next(iter(e.terms))
    c = ee.terms.get(g, ZERO) / e.terms[g]
    if not ee.equal(e.scale(c)):
        raise ArithmeticError("e*e is not proportional to e")
    return e, c


def young_idempotent(y: Tableau) -> GroupAlgebraElement:
    e, c = young_symmetrizer(y)
    return e.scale(ONE / c)


def sym_projector(n: int) -> GroupAlgebraElement:
    return young_idempotent(Tableau.row_filling([n])) if n else GroupAlgebraElement.unit(0)


def alt_projector(n: int) -> GroupAlgebraElement:
    return young_idempotent(Tableau.row_filling([1] * n)) if n else GroupAlgebraElement.unit(0)


def y_hook_tableau(p: int, m: int) -> Tableau:
    """Two-row tableau with columns (1,2), (3,4), ..., (2p-1,2p) then a
    tail 2p+1..2p+m in the first row."""
    top = tuple(range(1, 2 * p, 2)) + tuple(range(2 * p + 1, 2 * p + m + 1))
    bot = tuple(range(2, 2 * p + 1, 2))
    rows = (top, bot) if bot else (top,)
    return Tableau(rows)


# ---------------------------------------------------------------------------
# Schur-Weyl evaluation


def tensor_space(w_dim: int, n: int) -> GradedSpace:
    return GradedSpace(
        (t, 0) for t in itertools.product(range(w_dim), repeat=n))


def schur_weyl_evaluate(x: GroupAlgebraElement, w_dim: int) -> ChainMap:
    """Induced map W^{(x) source} -> W^{(x) target}, dim W = w_dim.

    A bijection g sends the slot-i content to slot g(i); on basis tuples
    T this is T |-> T . g^{-1}.
    """
    if w_dim < 1:
        raise ValueError("w_dim must be >= 1")
    src = tensor_space(w_dim, x.n)
    tgt = tensor_space(w_dim, x.n)
    entries: Dict = {}
    for g, c in x.terms.items():
        ginv = inverse(g)
        for t in itertools.product(range(w_dim), repeat=x.n):
            img = tuple(t[ginv[i]] for i in range(x.n))
            col = entries.setdefault(t, {})
            col[img] = col.get(img, ZERO) + c
    entries = {k: {t: c for t, c in col.items() if c} for k, col in entries.items()}
    return ChainMap(src, tgt, 0, entries, check=False)


# ---------------------------------------------------------------------------
# partitions, characters, Littlewood-Richardson


def partitions_of(n: int, cap: int | None = None):
    if n == 0:
        yield ()
        return
    cap = n if cap is None else min(cap, n)
    for first in range(cap, 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def z_order(rho: Tuple[int, ...]) -> int:
    """Centralizer order of the conjugacy class with cycle type rho."""
    z = 1
    for part in set(rho):
        m = rho.count(part)
        z *= part ** m * factorial(m)
    return z


@lru_cache(maxsize=None)
def mn_character(lam: Tuple[int, ...], rho: Tuple[int, ...]) -> int:
    """chi^lam at cycle type rho via the Murnaghan-Nakayama rule.

    Border strips are removed through beta-numbers b_i = lam_i + (m-1-i):
    a strip of size k is a move b -> b-k landing outside the beta-set,
    with sign (-1)^(number of beta-numbers jumped over).
    """
    lam = tuple(x for x in lam if x)
    rho = tuple(x for x in rho if x)
    if not rho:
        return 1 if not lam else 0
    k, rest = rho[0], rho[1:]
    m = len(lam)
    beta = [lam[i] + (m - 1 - i) for i in range(m)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for c in beta if nb < c < b)
        newbeta = sorted((c for c in beta if c != b), reverse=True)
        newbeta.append(nb)
        newbeta.sort(reverse=True)
        newlam = tuple(newbeta[j] - (m - 1 - j) for j in range(m))
        total += (-1) ** height * mn_character(tuple(x for x in newlam if x), rest)
    return total


def character_table_value(lam, rho) -> int:
    return mn_character(tuple(lam), tuple(sorted(rho, reverse=True)))


def littlewood_richardson(mu, nu, lam) -> int:
    """Multiplicity of M_lam inside M_mu (x) M_nu.

    Character inner product over S_|mu| x S_|nu| inside S_|lam|:
    c = sum over pairs of cycle types of
    chi^lam(rho1 + rho2) chi^mu(rho1) chi^nu(rho2) / (z_rho1 z_rho2).
    """
    mu, nu, lam = tuple(mu), tuple(nu), tuple(lam)
    if sum(mu) + sum(nu) != sum(lam):
        raise ValueError("|lam| must equal |mu| + |nu|")
    total = Fraction(0)
    for rho1 in partitions_of(sum(mu)):
        c1 = character_table_value(mu, rho1)
        if not c1:
            continue
        for rho2 in partitions_of(sum(nu)):
            c2 = character_table_value(nu, rho2)
            if not c2:
                continue
            joint = tuple(sorted(rho1 + rho2, reverse=True))
            cl = character_table_value(lam, joint)
            if cl:
                total += Fraction(c1 * c2 * cl, z_order(rho1) * z_order(rho2))
    assert total.denominator == 1
    return int(total)


def schur_dim(lam, w: int) -> int:
    """Weyl dimension of M_lam(W) for dim W = w (hook content formula)."""
    lam = tuple(lam)
    if len(lam) > w:
        return 0
    num = 1
    den = 1
    cols = [0] * (lam[0] if lam else 0)
    for r, l in enumerate(lam):
        for c in range(l):
            cols[c] += 1
    for r, l in enumerate(lam):
        for c in range(l):
            num *= w + c - r
            hook = (l - c) + (cols[c] - r) - 1
            den *= hook
    return num // den


def gl2_clebsch_gordan(a: int, p: int, b: int, q: int) -> List[Tuple[int, int]]:
    """Sym^a(p) (x) Sym^b(q) = (+)_k Sym^(a+b-2k)(p+q-k), k = 0..min(a,b).

    Twist convention: Sym^a(p) = Sym^a (x) (Alt^2)^(-p)."""
    if a < 0 or b < 0:
        raise ValueError("symmetric powers need nonnegative exponents")
    return [(a + b - 2 * k, p + q - k) for k in range(min(a, b) + 1)]


# ---------------------------------------------------------------------------
# signed cubical group


@dataclass(frozen=True)
class SignedCubicalGroupElement:
    """Element (tau, sigma) of S_n x| (Z/2)^n; sigma[i] = 1 flips slot i."""

    perm: Perm
    signs: Tuple[int, ...]

    def __post_init__(self):
        assert len(self.perm) == len(self.signs)


def chi_n(g: SignedCubicalGroupElement) -> int:
    """sgn(tau) * prod psi(sigma_i), psi the nontrivial character of Z/2."""
    val = sign(g.perm)
    if sum(g.signs) % 2:
        val = -val
    return val


def _acts_trivially_on_divisor(g: SignedCubicalGroupElement, i: int, j: int,
                               kind: str) -> bool:
    """Does g fix the generic point of the divisor {x_i = x_j} (kind '+')
    or {x_i + x_j = s} (kind '-')?

    Coordinates are tracked symbolically: a point of the divisor has free
    coordinates x_k (k != j) with x_j = x_i (kind '+') or x_j = s - x_i
    (kind '-').  The group acts by y_k = x_{tau^-1(k)} or s - x_{tau^-1(k)}.
    Each coordinate is the affine symbol (source_index, flipped?).
    """
    n = len(g.perm)
    tinv = inverse(g.perm)

    def resolve(k):
        # coordinate x_k of the divisor point, reduced to a free symbol
        if k == j:
            return (i, 1) if kind == "-" else (i, 0)
        return (k, 0)

    def flip(sym):
        return (sym[0], 1 - sym[1])

    for k in range(n):
        src = resolve(tinv[k])
        val = flip(src) if g.signs[k] else src
        if val != resolve(k):
            return False
    return True


def stabilizer_character_check(n: int) -> bool:
    """For every divisor x_i = x_j or x_i + x_j = s (i < j) the exhibited
    stabilizer element has character -1."""
    if n < 2:
        raise ValueError("need n >= 2")
    for i in range(n):
        for j in range(i + 1, n):
            swap = list(range(n))
            swap[i], swap[j] = j, i
            plus = SignedCubicalGroupElement(tuple(swap), (0,) * n)
            if not _acts_trivially_on_divisor(plus, i, j, "+"):
                return False
            if chi_n(plus) != -1:
                return False
            delta = tuple(1 if k in (i, j) else 0 for k in range(n))
            minus = SignedCubicalGroupElement(tuple(swap), delta)
            if not _acts_trivially_on_divisor(minus, i, j, "-"):
                return False
            if chi_n(minus) != -1:
                return False
    return True


# ---------------------------------------------------------------------------
# orientation modules


@dataclass(frozen=True)
class OrientationModule:
    """One-dimensional sign module on an ordered finite set.

    variance 'lower' is spanned by e_1 ^ ... ^ e_n with each e_a of
    degree -1; 'upper' by f_n ^ ... ^ f_1 with f_a of degree +1.
    Bijections act through their sign.
    """

    size: int
    variance: str  # 'lower' | 'upper'

    def __post_init__(self):
        assert self.variance in ("lower", "upper")

    @property
    def degree(self) -> int:
        return -self.size if self.variance == "lower" else self.size

    def action_sign(self, p: Perm) -> int:
        assert len(p) == self.size
        return sign(p)


def concat_iso_sign(a: int, b: int) -> int:
    """Sign of the canonical Lambda(A u B) = Lambda(A) (x) Lambda(B) for
    ordered concatenation; +1 in this ordering convention."""
    return 1
