"""Finite-type graded and differential graded modules.

Grading is homological: the differential lowers degree by one.  Basis
labels are arbitrary hashable values (words, monomials, simplex tuples)
so that maps given by formulas can be evaluated on labels directly.

Elements are sparse dicts ``{label: coefficient}`` inside one degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import CompositionNotZero
from .exactlin import Echelon, SparseMatrix, kernel_basis, product_is_zero, rank


class GradedModule:
    """Basis labels per degree; every other degree is zero."""

    def __init__(self, basis):
        self.basis = {n: tuple(labels) for n, labels in sorted(basis.items()) if labels}
        self._index = {}
        for n, labels in self.basis.items():
            idx = {lab: i for i, lab in enumerate(labels)}
            if len(idx) != len(labels):
                raise ValueError(f"repeated label in degree {n}")
            self._index[n] = idx

    def degrees(self):
        return list(self.basis)

    def dim(self, n):
        return len(self.basis.get(n, ()))

    def labels(self, n):
        return self.basis.get(n, ())

    def index(self, n, label):
        return self._index[n][label]

    def has(self, n, label):
        return label in self._index.get(n, ())

    def dims(self):
        return {n: len(b) for n, b in self.basis.items()}

    def degree_range(self):
        if not self.basis:
            return (0, -1)
        return (min(self.basis), max(self.basis))

    def to_vector(self, n, elem):
        """Sparse index vector of an element ``{label: c}`` of degree ``n``."""
        idx = self._index.get(n, {})
        return {idx[lab]: c for lab, c in elem.items() if c}

    def to_element(self, n, vec):
        labels = self.basis.get(n, ())
        return {labels[i]: c for i, c in vec.items() if c}


class DGModule(GradedModule):
    """Graded module with differential matrices ``d[n]: degree n -> n-1``."""

    def __init__(self, field, basis, diffs=None):
        super().__init__(basis)
        self.field = field
        self.diffs = {}
        for n, mat in (diffs or {}).items():
            want = (self.dim(n - 1), self.dim(n))
            if mat.shape != want:
                raise ValueError(f"d_{n} has shape {mat.shape}, expected {want}")
            if not mat.is_zero():
                self.diffs[n] = mat

    @classmethod
    def from_boundary(cls, field, basis, boundary, strict=True):
        """Build the differential from ``boundary(n, label) -> {label: c}``.

        With ``strict=False`` terms outside the basis are dropped, which is
        how quotient truncations are formed.
        """
        gm = GradedModule(basis)
        diffs = {}
        for n in gm.degrees():
            if not gm.dim(n - 1):
                continue
            tgt = gm._index[n - 1]
            cols = []
            for lab in gm.labels(n):
                col = {}
                for t, c in boundary(n, lab).items():
                    if t not in tgt:
                        if strict:
                            raise KeyError(f"boundary of {lab!r} hits {t!r} outside degree {n - 1}")
                        continue
                    j = tgt[t]
                    col[j] = col.get(j, 0) + c
                cols.append(col)
            diffs[n] = SparseMatrix(field, gm.dim(n - 1), gm.dim(n), cols)
        return cls(field, gm.basis, diffs)

    def d(self, n):
        mat = self.diffs.get(n)
        if mat is None:
            return SparseMatrix.zero(self.field, self.dim(n - 1), self.dim(n))
        return mat

    def apply_d(self, n, elem):
        vec = self.to_vector(n, elem)
        return self.to_element(n - 1, self.d(n).apply(vec))

    def __repr__(self):
        return f"DGModule({self.field}, dims={self.dims()})"

    def same_as(self, other):
        """Equal bases and equal differential matrices."""
        if self.field != other.field or self.basis != other.basis:
            return False
        return all(self.d(n) == other.d(n) for n in set(self.diffs) | set(other.diffs))


@dataclass
class DSquareReport:
    violations: list = dc_field(default_factory=list)  # (degree, nonzero count)
    checked: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.violations


def verify_dsquare(m, lo=None, hi=None):
    """Check ``d_{n} d_{n+1} = 0`` for ``n`` in ``[lo, hi]``."""
    a, b = m.degree_range()
    lo = a if lo is None else lo
    hi = b if hi is None else hi
    rep = DSquareReport()
    for n in range(lo, hi + 1):
        if n not in m.diffs or (n + 1) not in m.diffs:
            rep.checked.append(n)
            continue
        rep.checked.append(n)
        if not product_is_zero(m.d(n), m.d(n + 1)):
            prod = m.d(n) @ m.d(n + 1)
            rep.violations.append((n, prod.nnz()))
    return rep


def homology(m, lo=None, hi=None, representatives=False):
    """Homology per degree: ``{n: dim}`` or ``{n: (dim, [cycles])}``."""
    a, b = m.degree_range()
    lo = a if lo is None else lo
    hi = b if hi is None else hi
    out = {}
    for n in range(lo, hi + 1):
        din, dout = m.d(n + 1), m.d(n)
        if not product_is_zero(dout, din):
            raise CompositionNotZero(f"d_{n} d_{n + 1} != 0")
        dim = m.dim(n) - rank(dout) - rank(din)
        if not representatives:
            out[n] = dim
            continue
        ech = Echelon(m.field)
        for col in din.cols:
            ech.add(col)
        reps = []
        for vec in kernel_basis(dout):
            sv = {i: c for i, c in enumerate(vec) if c}
            if ech.add(sv) is not None:
                reps.append(m.to_element(n, sv))
        assert len(reps) == dim
        out[n] = (dim, reps)
    return out


class ChainMap:
    """Degree-``shift`` map of DG modules: ``mats[n]: source_n -> target_{n+shift}``."""

    def __init__(self, source, target, mats, shift=0):
        self.source = source
        self.target = target
        self.shift = shift
        self.mats = {}
        for n, mat in mats.items():
            want = (target.dim(n + shift), source.dim(n))
            if mat.shape != want:
                raise ValueError(f"f_{n} has shape {mat.shape}, expected {want}")
            self.mats[n] = mat

    @classmethod
    def from_function(cls, source, target, fn, shift=0, strict=True):
        """``fn(n, label) -> {target label: c}``."""
        mats = {}
        for n in source.degrees():
            tgt = target._index.get(n + shift, {})
            cols = []
            for lab in source.labels(n):
                col = {}
                for t, c in fn(n, lab).items():
                    if t not in tgt:
                        if strict:
                            raise KeyError(f"{lab!r} maps to {t!r} outside the target")
                        continue
                    j = tgt[t]
                    col[j] = col.get(j, 0) + c
                cols.append(col)
            mats[n] = SparseMatrix(source.field, target.dim(n + shift), source.dim(n), cols)
        return cls(source, target, mats, shift)

    def mat(self, n):
        m = self.mats.get(n)
        if m is None:
            return SparseMatrix.zero(self.source.field, self.target.dim(n + self.shift), self.source.dim(n))
        return m

    def apply(self, n, elem):
        vec = self.source.to_vector(n, elem)
        return self.target.to_element(n + self.shift, self.mat(n).apply(vec))

    def commutation_defects(self, lo=None, hi=None):
        """Degrees where ``d f != (-1)^shift f d``."""
        a, b = self.source.degree_range()
        lo = a if lo is None else lo
        hi = b if hi is None else hi
        sgn = -1 if self.shift % 2 else 1
        bad = []
        for n in range(lo, hi + 1):
            left = self.target.d(n + self.shift) @ self.mat(n)
            right = (self.mat(n - 1) @ self.source.d(n)).scale(sgn)
            if left != right:
                bad.append(n)
        return bad

    def is_chain_map(self, lo=None, hi=None):
        return not self.commutation_defects(lo, hi)

    def compose(self, other):
        """``self o other``."""
        mats = {}
        for n in other.source.degrees():
            mats[n] = self.mat(n + other.shift) @ other.mat(n)
        return ChainMap(other.source, self.target, mats, self.shift + other.shift)


def induced_rank(f, n):
    """Rank of ``H_n(f)`` from cycle representatives of the source."""
    hs = homology(f.source, n, n, representatives=True)[n][1]
    tgt = f.target
    m = n + f.shift
    ech = Echelon(tgt.field)
    for col in tgt.d(m + 1).cols:
        ech.add(col)
    base = len(ech)
    for z in hs:
        ech.add(tgt.to_vector(m, f.apply(n, z)))
    return len(ech) - base


def tensor(a, b):
    """Tensor product with ``d(x*y) = dx*y + (-1)^|x| x*dy``; labels are pairs."""
    if a.field != b.field:
        raise ValueError("fields differ")
    basis = {}
    for i in a.degrees():
        for j in b.degrees():
            basis.setdefault(i + j, []).extend((x, y) for x in a.labels(i) for y in b.labels(j))
    deg_a = {}
    for i in a.degrees():
        for x in a.labels(i):
            deg_a[x] = i
    deg_b = {}
    for j in b.degrees():
        for y in b.labels(j):
            deg_b[y] = j

    def boundary(n, lab):
        x, y = lab
        i, j = deg_a[x], deg_b[y]
        out = {}
        for u, c in a.apply_d(i, {x: 1}).items():
            out[(u, y)] = out.get((u, y), 0) + c
        sgn = -1 if i % 2 else 1
        for v, c in b.apply_d(j, {y: 1}).items():
            out[(x, v)] = out.get((x, v), 0) + sgn * c
        return out

    return DGModule.from_boundary(a.field, basis, boundary)


def suspend(m, shift):
    """Shift degrees up by ``shift``; the differential picks up ``(-1)^shift``."""
    basis = {n + shift: labels for n, labels in m.basis.items()}
    sgn = -1 if shift % 2 else 1
    diffs = {n + shift: mat.scale(sgn) for n, mat in m.diffs.items()}
    return DGModule(m.field, basis, diffs)


def ground(field, label=()):
    """The ground field in degree 0."""
    return DGModule(field, {0: [label]})
