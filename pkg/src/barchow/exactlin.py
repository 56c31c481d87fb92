"""Exact rational graded linear algebra.

Everything downstream is built on three structures: finite graded vector
spaces over Q with named basis elements, homogeneous linear maps between
them (stored sparsely), and complexes.  All coefficients are
`fractions.Fraction`; there is no floating point anywhere in the package.

Sign conventions.  The differential of a homogeneous map f is
``D(f) = d_target . f - (-1)^deg(f) f . d_source``.  Tensor products of
complexes follow the Koszul rule ``d(x (x) y) = dx (x) y + (-1)^deg(x)
x (x) dy``, tensor products of maps carry the sign
``(f (x) g)(x (x) y) = (-1)^(deg g * deg x) f(x) (x) g(y)``, and the
transposition is ``sigma(x (x) y) = (-1)^(deg x * deg y) y (x) x``.  The
simple complex of a double complex places the outer-index-i column in
total degree (i + inner) and twists the outer differential by
``(-1)^inner``; with these choices the canonical identification
``s(K (x) L) = s(K) (x) s(L)`` holds on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

Label = Any                     # hashable basis token
Vector = Dict[Label, Fraction]  # sparse vector, no zero values stored


def scalar(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(*pairs) -> Vector:
    """Build a sparse vector from (label, coeff) pairs."""
    v: Vector = {}
    for label, c in pairs:
        c = scalar(c)
        if c:
            v[label] = v.get(label, ZERO) + c
    return {k: c for k, c in v.items() if c}


def vadd(u: Vector, v: Vector, cv: Fraction = ONE) -> Vector:
    """u + cv*v as a fresh sparse vector."""
    out = dict(u)
    for k, c in v.items():
        c = out.get(k, ZERO) + cv * c
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def vscale(v: Vector, c: Fraction) -> Vector:
    c = scalar(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class GradedSpace:
    """Finite dimensional graded space with an ordered named basis."""

    def __init__(self, basis: Iterable[Tuple[Label, int]]):
        self.basis: List[Tuple[Label, int]] = list(basis)
        self.degree: Dict[Label, int] = {}
        self.index: Dict[Label, int] = {}
        for i, (label, deg) in enumerate(self.basis):
            if label in self.degree:
                raise ValueError(f"duplicate basis label {label!r}")
            self.degree[label] = deg
            self.index[label] = i

    @property
    def dim(self) -> int:
        return len(self.basis)

    def labels(self, degree=None) -> List[Label]:
        if degree is None:
            return [l for l, _ in self.basis]
        return [l for l, d in self.basis if d == degree]

    def degrees(self) -> List[int]:
        return sorted({d for _, d in self.basis})

    def deg_of(self, v: Vector) -> int:
        """Degree of a homogeneous vector (error if mixed)."""
        degs = {self.degree[k] for k in v}
        if len(degs) != 1:
            raise ValueError(f"vector not homogeneous: degrees {degs}")
        return degs.pop()

    def tensor(self, other: "GradedSpace") -> "GradedSpace":
        return GradedSpace(
            ((a, b), da + db) for a, da in self.basis for b, db in other.basis
        )

    def shift(self, n: int) -> "GradedSpace":
        """The space K e^n: same labels, degrees lowered by n."""
        return GradedSpace((l, d - n) for l, d in self.basis)

    def __repr__(self):
        return f"GradedSpace(dim={self.dim}, degrees={self.degrees()})"


class ChainMap:
    """Homogeneous linear map stored as {src_label: {tgt_label: coeff}}."""

    def __init__(self, source: GradedSpace, target: GradedSpace, degree: int,
                 entries: Dict[Label, Vector] | None = None, check: bool = True):
        self.source = source
        self.target = target
        self.degree = degree
        self.entries: Dict[Label, Vector] = {}
        if entries:
            for k, col in entries.items():
                col = {t: scalar(c) for t, c in col.items() if scalar(c)}
                if col:
                    self.entries[k] = col
        if check:
            for k, col in self.entries.items():
                dk = source.degree[k]
                for t in col:
                    if target.degree[t] != dk + degree:
                        raise ValueError(
                            f"entry {k!r}->{t!r} violates degree "
                            f"{dk}+{degree}!={target.degree[t]}")

    @classmethod
    def zero(cls, source, target, degree=0):
        return cls(source, target, degree, {})

    @classmethod
    def identity(cls, space):
        return cls(space, space, 0, {l: {l: ONE} for l, _ in space.basis})

    def __call__(self, v: Vector) -> Vector:
        out: Vector = {}
        for k, c in v.items():
            col = self.entries.get(k)
            if not col:
                continue
            for t, a in col.items():
                x = out.get(t, ZERO) + c * a
                if x:
                    out[t] = x
                else:
                    out.pop(t, None)
        return out

    def apply_label(self, k: Label) -> Vector:
        return dict(self.entries.get(k, {}))

    def then(self, g: "ChainMap") -> "ChainMap":
        """Composite self followed by g (that is g . self)."""
        assert self.target is g.source or self.target.basis == g.source.basis
        entries = {k: g(col) for k, col in self.entries.items()}
        return ChainMap(self.source, g.target, self.degree + g.degree,
                        entries, check=False)

    def add(self, other: "ChainMap", c: Fraction = ONE) -> "ChainMap":
        assert self.degree == other.degree
        entries = {k: dict(col) for k, col in self.entries.items()}
        for k, col in other.entries.items():
            entries[k] = vadd(entries.get(k, {}), col, c)
        return ChainMap(self.source, self.target, self.degree, entries,
                        check=False)

    def scale(self, c: Fraction) -> "ChainMap":
        return ChainMap(self.source, self.target, self.degree,
                        {k: vscale(col, c) for k, col in self.entries.items()},
                        check=False)

    def is_zero(self) -> bool:
        return all(not col for col in self.entries.values())

    def equal(self, other: "ChainMap") -> bool:
        keys = set(self.entries) | set(other.entries)
        for k in keys:
            if vadd(self.entries.get(k, {}), other.entries.get(k, {}), -ONE):
                return False
        return True

    def tensor(self, other: "ChainMap") -> "ChainMap":
        """f (x) g with the Koszul sign (-1)^(deg g * deg x)."""
        src = self.source.tensor(other.source)
        tgt = self.target.tensor(other.target)
        entries: Dict[Label, Vector] = {}
        dg = other.degree
        for a, cola in self.entries.items():
            for b, colb in other.entries.items():
                sign = -ONE if (dg * self.source.degree[a]) % 2 else ONE
                col: Vector = {}
                for ta, ca in cola.items():
                    for tb, cb in colb.items():
                        col[(ta, tb)] = sign * ca * cb
                if col:
                    entries[(a, b)] = col
        return ChainMap(src, tgt, self.degree + other.degree, entries,
                        check=False)

    def matrix(self, src_labels: List[Label], tgt_labels: List[Label]):
        """Dense matrix rows=targets, cols=sources (for rank work)."""
        idx = {t: i for i, t in enumerate(tgt_labels)}
        mat = [[ZERO] * len(src_labels) for _ in tgt_labels]
        for j, s in enumerate(src_labels):
            for t, c in self.entries.get(s, {}).items():
                if t in idx:
                    mat[idx[t]][j] = c
        return mat

    def __repr__(self):
        nnz = sum(len(c) for c in self.entries.values())
        return f"ChainMap(degree={self.degree}, nnz={nnz})"


def hom_differential(f: ChainMap, d_source: ChainMap, d_target: ChainMap) -> ChainMap:
    """D(f) = d_target . f - (-1)^deg(f) f . d_source."""
    left = f.then(d_target)
    right = d_source.then(f)
    sign = -ONE if f.degree % 2 else ONE
    return left.add(right, -sign)


@dataclass
class Complex:
    space: GradedSpace
    differential: ChainMap

    def __post_init__(self):
        assert self.differential.degree == 1
        dd = self.differential.then(self.differential)
        if not dd.is_zero():
            raise ValueError("differential does not square to zero")

    @classmethod
    def zero_diff(cls, space: GradedSpace) -> "Complex":
        return cls(space, ChainMap.zero(space, space, 1))

    @classmethod
    def point(cls, label="1", degree=0) -> "Complex":
        return cls.zero_diff(GradedSpace([(label, degree)]))

    @property
    def dim(self) -> int:
        return self.space.dim

    def d(self, v: Vector) -> Vector:
        return self.differential(v)


def tensor(a: Complex, b: Complex) -> Complex:
    """Tensor product complex with the Koszul differential."""
    space = a.space.tensor(b.space)
    entries: Dict[Label, Vector] = {}
    for la, da in a.space.basis:
        cola = a.differential.entries.get(la, {})
        for lb, db in b.space.basis:
            col: Vector = {}
            for t, c in cola.items():
                col[(t, lb)] = c
            colb = b.differential.entries.get(lb, {})
            sgn = -ONE if da % 2 else ONE
            for t, c in colb.items():
                col[(la, t)] = col.get((la, t), ZERO) + sgn * c
            col = {k: c for k, c in col.items() if c}
            if col:
                entries[(la, lb)] = col
    return Complex(space, ChainMap(space, space, 1, entries, check=False))


def transpose(a: Complex, b: Complex) -> ChainMap:
    """sigma: A (x) B -> B (x) A, x(x)y |-> (-1)^(|x||y|) y(x)x."""
    src = a.space.tensor(b.space)
    tgt = b.space.tensor(a.space)
    entries = {}
    for la, da in a.space.basis:
        for lb, db in b.space.basis:
            sgn = -ONE if (da * db) % 2 else ONE
            entries[(la, lb)] = {(lb, la): sgn}
    return ChainMap(src, tgt, 0, entries, check=False)


class DoubleComplex:
    """Columns of complexes with commuting horizontal degree-0 maps.

    `columns[i]` is the complex sitting at outer index i, `horizontal[i]`
    the chain map columns[i] -> columns[i+1].  Squares must commute; the
    anticommuting sign appears only in the assembled simple complex.
    """

    def __init__(self, columns: Dict[int, Complex], horizontal: Dict[int, ChainMap]):
        self.columns = dict(columns)
        self.horizontal = dict(horizontal)
        for i, h in self.horizontal.items():
            assert h.degree == 0
            nxt = self.columns.get(i + 1)
            if nxt is None:
                raise ValueError(f"horizontal map out of missing column {i+1}")
            # squares commute: h d = d h
            lhs = self.columns[i].differential.then(h)
            rhs = h.then(nxt.differential)
            if not lhs.equal(rhs):
                raise ValueError(f"square at column {i} does not commute")
            hh = self.horizontal.get(i + 1)
            if hh is not None and not h.then(hh).is_zero():
                raise ValueError(f"horizontal maps do not square to zero at {i}")


def simple_complex(dc: DoubleComplex) -> Complex:
    """Associated simple complex; total degree = outer + inner.

    Labels are (outer, label).  The outer differential is twisted by
    (-1)^inner, which is the Koszul sign of d (x) t^{-1} acting on
    column (x) shift.
    """
    basis = []
    for i in sorted(dc.columns):
        for l, d in dc.columns[i].space.basis:
            basis.append(((i, l), i + d))
    space = GradedSpace(basis)
    entries: Dict[Label, Vector] = {}
    for i in sorted(dc.columns):
        col_cx = dc.columns[i]
        h = dc.horizontal.get(i)
        for l, d in col_cx.space.basis:
            colv: Vector = {}
            for t, c in col_cx.differential.entries.get(l, {}).items():
                colv[(i, t)] = c
            if h is not None:
                sgn = -ONE if d % 2 else ONE
                for t, c in h.entries.get(l, {}).items():
                    colv[(i + 1, t)] = colv.get((i + 1, t), ZERO) + sgn * c
            colv = {k: c for k, c in colv.items() if c}
            if colv:
                entries[(i, l)] = colv
    dmap = ChainMap(space, space, 1, entries, check=False)
    if not dmap.then(dmap).is_zero():
        raise ValueError("assembled simple differential does not square to zero")
    return Complex(space, dmap)


# ---------------------------------------------------------------------------
# exact Gaussian elimination


def row_reduce(mat: List[List[Fraction]]):
    """In-place RREF; returns list of pivot column indices."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        if pv != ONE:
            mat[r] = [x / pv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(mat: List[List[Fraction]]) -> int:
    m = [row[:] for row in mat]
    return len(row_reduce(m))


def nullspace(mat: List[List[Fraction]], cols: int) -> List[List[Fraction]]:
    """Basis of the kernel of the matrix (rows = equations)."""
    m = [row[:] for row in mat]
    pivots = row_reduce(m) if m else []
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [ZERO] * cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve(mat: List[List[Fraction]], rhs: List[Fraction]):
    """One solution of mat.x = rhs, or None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [mat[i][:] + [rhs[i]] for i in range(rows)]
    pivots = row_reduce(aug)
    if pivots and pivots[-1] == cols:
        return None
    x = [ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][cols]
    return x


def column_span_rank(vectors: List[Vector]) -> int:
    """Rank of a list of sparse vectors."""
    labels = sorted({k for v in vectors for k in v}, key=repr)
    idx = {l: i for i, l in enumerate(labels)}
    mat = [[v.get(l, ZERO) for l in labels] for v in vectors]
    return rank(mat)


def independent_subset(vectors: List[Vector]) -> List[int]:
    """Indices of a maximal linearly independent subset (greedy, exact)."""
    labels = sorted({k for v in vectors for k in v}, key=repr)
    idx = {l: i for i, l in enumerate(labels)}
    echelon: List[List[Fraction]] = []
    keep = []
    for i, v in enumerate(vectors):
        row = [v.get(l, ZERO) for l in labels]
        for e in echelon:
            # eliminate with previously kept rows
            p = next((j for j, x in enumerate(e) if x), None)
            if p is not None and row[p]:
                f = row[p] / e[p]
                row = [a - f * b for a, b in zip(row, e)]
        if any(row):
            echelon.append(row)
            keep.append(i)
    return keep


def cohomology(cx: Complex, degree: int):
    """(dimension, representative vectors) of H^degree.

    Exact kernel/image computation; representatives span a complement of
    the image inside the kernel.
    """
    below = cx.space.labels(degree - 1)
    here = cx.space.labels(degree)
    above = cx.space.labels(degree + 1)
    # kernel of d restricted to degree
    mat = cx.differential.matrix(here, above)
    ker = nullspace(mat, len(here))
    # image of d from degree-1, as vectors in `here` coordinates
    img_vecs = []
    for l in below:
        col = cx.differential.entries.get(l, {})
        v = [col.get(h, ZERO) for h in here]
        if any(v):
            img_vecs.append(v)
    # reduce image to echelon form
    img = [r[:] for r in img_vecs]
    row_reduce(img)
    img = [r for r in img if any(r)]
    dim = len(ker) - len(img)
    # representatives: kernel vectors independent modulo the image
    reps: List[Vector] = []
    echelon = [r[:] for r in img]
    for v in ker:
        row = v[:]
        for e in echelon:
            p = next((j for j, x in enumerate(e) if x), None)
            if p is not None and row[p]:
                f = row[p] / e[p]
                row = [a - f * b for a, b in zip(row, e)]
        if any(row):
            echelon.append(row)
            reps.append({here[j]: c for j, c in enumerate(v) if c})
        if len(reps) == dim:
            break
    return dim, reps


def euler_characteristic(cx: Complex) -> int:
    chi = 0
    for _, d in cx.space.basis:
        chi += 1 if d % 2 == 0 else -1
    return chi
