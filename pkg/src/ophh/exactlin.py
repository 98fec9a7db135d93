"""Exact sparse linear algebra over Q and prime fields.

Matrices are stored column-wise: ``cols[j]`` is a dict ``{row: value}``
holding the nonzero entries of column ``j``.  Over Q entries are ``int``
or ``Fraction``; over F_p they are ints in ``range(1, p)``.

Rank computations go through the elimination kernel chosen at import:
the compiled ``_kernels`` extension when it is available, otherwise the
pure-Python ``_kernels_py``.  Set ``OPHH_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import _kernels_py
from .errors import CompositionNotZero

if os.environ.get("OPHH_PURE_PYTHON") == "1":
    _kernels = _kernels_py
else:
    try:
        from . import _kernels
    except ImportError:  # extension not built
        _kernels = _kernels_py

BACKEND = _kernels.BACKEND


def kernel_module(name=None):
    """Return the elimination kernel by name ('cython' or 'python')."""
    if name is None:
        return _kernels
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels as compiled

        return compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime(cls, p):
        return cls(p)

    @classmethod
    def parse(cls, text):
        """Accept 'Q', 'QQ', 'F7', 'Fp:7', 'GF(7)', 'Z/7'."""
        t = text.strip().replace(" ", "")
        if t.upper() in ("Q", "QQ", "RATIONALS"):
            return cls(0)
        for prefix in ("FP:", "GF(", "Z/", "F"):
            if t.upper().startswith(prefix):
                digits = t[len(prefix):].rstrip(")")
                if digits.isdigit():
                    return cls(int(digits))
        raise ValueError(f"unrecognised field {text!r}")

    @property
    def characteristic(self):
        return self.p

    @property
    def name(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    def __str__(self):
        return self.name

    def coerce(self, x):
        if self.p == 0:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            return int(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p == 0:
            return self.coerce(Fraction(1) / Fraction(x))
        return pow(x, -1, self.p)

    def is_zero(self, x):
        return x == 0 if self.p == 0 else x % self.p == 0

    def sign(self, s):
        """Image of the integer ``s`` (usually +-1) in the field."""
        return s if self.p == 0 else s % self.p


Q = Field(0)


def _clean(field, col):
    out = {}
    for k, x in col.items():
        x = field.coerce(x)
        if x:
            out[k] = x
    return out


class SparseMatrix:
    """Immutable sparse matrix ``rows x cols`` over a field."""

    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field, nrows, ncols, cols=None, _trusted=False):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        elif not _trusted:
            cols = [_clean(field, c) for c in cols]
            if len(cols) != ncols:
                raise ValueError("column count mismatch")
            for c in cols:
                for r in c:
                    if not 0 <= r < nrows:
                        raise IndexError(f"row {r} outside 0..{nrows - 1}")
        self.cols = cols

    # construction ---------------------------------------------------------
    @classmethod
    def from_entries(cls, field, nrows, ncols, entries):
        cols = [{} for _ in range(ncols)]
        for r, c, v in entries:
            if r in cols[c]:
                raise ValueError(f"duplicate entry ({r}, {c})")
            cols[c][r] = v
        return cls(field, nrows, ncols, cols)

    @classmethod
    def from_dense(cls, field, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [{i: rows[i][j] for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls(field, nrows, ncols, cols)

    @classmethod
    def zero(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: 1} for i in range(n)], _trusted=True)

    # views ----------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entries(self):
        """Sorted ``(row, col, value)`` triples."""
        return sorted((r, c, v) for c, col in enumerate(self.cols) for r, v in col.items())

    def nnz(self):
        return sum(len(c) for c in self.cols)

    def is_zero(self):
        return not any(self.cols)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def transpose(self):
        cols = [{} for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                cols[r][c] = v
        return SparseMatrix(self.field, self.ncols, self.nrows, cols, _trusted=True)

    def permuted(self, row_perm, col_perm):
        """Matrix with row ``r`` moved to ``row_perm[r]`` and likewise for columns."""
        cols = [None] * self.ncols
        for c, col in enumerate(self.cols):
            cols[col_perm[c]] = {row_perm[r]: v for r, v in col.items()}
        return SparseMatrix(self.field, self.nrows, self.ncols, cols, _trusted=True)

    def apply(self, vec):
        """Image of a sparse vector ``{col: value}``."""
        out = {}
        for c, x in vec.items():
            for r, y in self.cols[c].items():
                out[r] = out.get(r, 0) + x * y
        return _clean(self.field, out)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [self.apply(c) for c in other.cols]
        return SparseMatrix(self.field, self.nrows, other.ncols, cols, _trusted=True)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for r, v in b.items():
                c[r] = c.get(r, 0) + v
            cols.append(_clean(self.field, c))
        return SparseMatrix(self.field, self.nrows, self.ncols, cols, _trusted=True)

    def scale(self, s):
        s = self.field.coerce(s)
        cols = [_clean(self.field, {r: s * v for r, v in c.items()}) for c in self.cols]
        return SparseMatrix(self.field, self.nrows, self.ncols, cols, _trusted=True)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self.entries())))

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()}, {self.field})"


def _integer_columns(cols):
    out = []
    for c in cols:
        dens = [v.denominator for v in c.values() if isinstance(v, Fraction)]
        if dens:
            m = lcm(*dens)
            c = {r: int(v * m) for r, v in c.items()}
        out.append(c)
    return out


def _ordered(cols):
    # sparse columns first; stable, so deterministic
    return sorted(cols, key=len)


def rank(m, backend=None):
    """Exact rank of ``m`` over its field."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    k = kernel_module(backend)
    cols = _ordered([c for c in m.cols if c])
    if not cols:
        return 0
    if m.field.p:
        return k.rank_modp(cols, m.field.p)
    cols = _integer_columns(cols)
    try:
        return k.rank_int(cols)
    except OverflowError:
        return _kernels_py.rank_int(cols)


def product_is_zero(left, right):
    """True iff ``left @ right`` is the zero matrix."""
    if left.ncols != right.nrows:
        raise ValueError(f"shape mismatch {left.shape} @ {right.shape}")
    p = left.field.p or None
    if p is None and any(isinstance(v, Fraction) for c in left.cols + right.cols for v in c.values()):
        return _kernels_py.product_is_zero(left.cols, right.cols)
    try:
        return _kernels.product_is_zero(left.cols, right.cols, p)
    except OverflowError:
        return _kernels_py.product_is_zero(left.cols, right.cols, p)


class Echelon:
    """Incremental reduced echelon basis of a subspace of ``field^n``.

    Vectors are sparse dicts.  ``reduce`` returns the remainder of a vector
    modulo the span; ``add`` inserts it when independent.  Pivots are the
    smallest index of each stored vector, so results are deterministic.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}  # pivot -> vector with entry 1 at pivot, reduced w.r.t. other pivots

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        f = self.field
        v = _clean(f, vec)
        # subtraction can introduce new pivot hits, so rescan each time
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                return v
            k = min(hits)
            c = v[k]
            for r, x in self.rows[k].items():
                y = f.coerce(v.get(r, 0) - c * x)
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)

    def add(self, vec):
        """Insert ``vec``; returns its pivot, or None if it was dependent."""
        f = self.field
        v = self.reduce(vec)
        if not v:
            return None
        piv = min(v)
        inv = f.inv(v[piv])
        v = {r: f.coerce(x * inv) for r, x in v.items()}
        # keep the basis fully reduced
        for k, row in self.rows.items():
            c = row.get(piv)
            if c:
                for r, x in v.items():
                    y = f.coerce(row.get(r, 0) - c * x)
                    if y:
                        row[r] = y
                    else:
                        row.pop(r, None)
        self.rows[piv] = v
        return piv

    def contains(self, vec):
        return not self.reduce(vec)

    def pivots(self):
        return sorted(self.rows)


def kernel_basis(m):
    """Exact basis of the null space of ``m`` as dense coefficient tuples."""
    f = m.field
    ech = Echelon(f)
    # row-reduce the rows of m: pivots are column indices
    for row in m.transpose().cols:
        ech.add(row)
    pivots = set(ech.rows)
    basis = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        vec = [0] * m.ncols
        vec[free] = 1
        for piv, row in ech.rows.items():
            c = row.get(free)
            if c:
                vec[piv] = f.coerce(-c)
        basis.append(tuple(vec))
    return basis


def homology_dim(d_in, d_out, check=True):
    """dim ker(d_out) - rank(d_in) for ``d_in: C' -> C`` and ``d_out: C -> C''``."""
    if d_in.nrows != d_out.ncols:
        raise ValueError(f"d_in lands in dimension {d_in.nrows}, d_out starts from {d_out.ncols}")
    if check and not product_is_zero(d_out, d_in):
        raise CompositionNotZero("d_out . d_in != 0")
    return d_out.ncols - rank(d_out) - rank(d_in)
