"""Free and almost free algebras over the operads A and C.

A monomial is a tuple of generator indices.  In the commutative flavor
it is kept sorted (generator order), odd generators square to zero away
from characteristic 2, and reordering carries the Koszul sign.  In the
associative flavor a monomial is a word.

Elements are sparse dicts ``{monomial: coefficient}``.  Differentials
are derivations determined by their values on generators.
"""
from __future__ import annotations

from .dgmod import DGModule
from .errors import DSquareNonzero
from .exactlin import Q

COMM = "C"
ASSOC = "A"


def _add(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class GeneratorSpace:
    """Named generators with (lower) degrees and optional differential values.

    ``d`` maps a generator index to an element written with monomials in
    the same generator indices.
    """

    def __init__(self, names, degrees, d=None):
        if len(names) != len(degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(names)) != len(names):
            raise ValueError("repeated generator name")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.d = dict(d or {})
        self.index = {nm: i for i, nm in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def copies(self, n):
        """``V`` summed ``n`` times; generator ``(c, g)`` has index ``c * len(V) + g``."""
        k = len(self)
        names = [(c, nm) for c in range(n) for nm in self.names]
        degrees = [self.degrees[g] for c in range(n) for g in range(k)]
        d = {}
        for c in range(n):
            for g, val in self.d.items():
                d[c * k + g] = {tuple(c * k + x for x in m): v for m, v in val.items()}
        return GeneratorSpace(names, degrees, d)

    def direct_sum(self, other):
        k = len(self)
        names = [(0, nm) for nm in self.names] + [(1, nm) for nm in other.names]
        degrees = list(self.degrees) + list(other.degrees)
        d = dict(self.d)
        for g, val in other.d.items():
            d[k + g] = {tuple(k + x for x in m): v for m, v in val.items()}
        return GeneratorSpace(names, degrees, d)


class FreeAlgebra:
    """``F(O, V)`` for ``O`` = A or C, possibly modulo monomial relations.

    ``max_weight`` truncates by word length: monomials of larger weight
    are treated as zero.  This is a quotient by a differential ideal as
    long as generator differentials have no constant term.
    """

    def __init__(self, V, flavor=COMM, field=Q, max_weight=None, relations=(), name="A"):
        if flavor not in (COMM, ASSOC):
            raise ValueError(f"unknown flavor {flavor!r}")
        self.V = V
        self.flavor = flavor
        self.field = field
        self.max_weight = max_weight
        self.name = name
        self.odd = tuple(dg % 2 != 0 for dg in V.degrees)
        self.relations = tuple(self.normal(tuple(r)) for r in relations)
        for g, val in V.d.items():
            for m in val:
                if len(m) == 0:
                    raise ValueError(f"d({V.names[g]}) has a constant term")
                if self.mono_degree(m) != V.degrees[g] - 1:
                    raise ValueError(f"d({V.names[g]}) is not of degree {V.degrees[g] - 1}")

    # monomials -------------------------------------------------------------
    def normal(self, word):
        """Sort a commutative word: ``(sign, monomial)``; sign 0 means zero."""
        if self.flavor == ASSOC:
            return word
        s, m = self._sort(word)
        return m if s else None

    def _sort(self, word):
        if self.flavor == ASSOC:
            return 1, tuple(word)
        odd = self.odd
        sgn = 1
        w = list(word)
        # insertion sort counting odd transpositions
        for i in range(1, len(w)):
            j = i
            while j > 0 and w[j - 1] > w[j]:
                if odd[w[j - 1]] and odd[w[j]]:
                    sgn = -sgn
                w[j - 1], w[j] = w[j], w[j - 1]
                j -= 1
        if self.field.p != 2:
            for i in range(len(w) - 1):
                if w[i] == w[i + 1] and odd[w[i]]:
                    return 0, None
        return sgn, tuple(w)

    def mono_degree(self, m):
        return sum(self.V.degrees[g] for g in m)

    def is_zero_mono(self, m):
        if self.max_weight is not None and len(m) > self.max_weight:
            return True
        for r in self.relations:
            if r is None:
                continue
            if self.flavor == ASSOC:
                k = len(r)
                if any(m[i:i + k] == r for i in range(len(m) - k + 1)):
                    return True
            else:
                if _divides(r, m):
                    return True
        return False

    def mul_mono(self, a, b):
        """``(sign, monomial)`` of ``a * b``; sign 0 when the product vanishes."""
        s, m = self._sort(a + b)
        if not s or self.is_zero_mono(m):
            return 0, None
        return s, m

    def mul(self, x, y):
        out = {}
        f = self.field
        for a, c in x.items():
            for b, e in y.items():
                s, m = self.mul_mono(a, b)
                if s:
                    _add(out, m, f.coerce(s * c * e))
        return out

    def one(self):
        return {(): 1}

    def gen(self, name):
        return {(self.V.index[name],): 1}

    def unit_label(self):
        return ()

    # differential ------------------------------------------------------------
    def d_mono(self, m):
        """Derivation: ``d(v_1...v_k) = sum (-1)^{|v_1..v_{i-1}|} v_1..d(v_i)..v_k``."""
        out = {}
        f = self.field
        deg_before = 0
        for i, g in enumerate(m):
            dg = self.V.d.get(g)
            if dg:
                sgn = -1 if deg_before % 2 else 1
                left, right = m[:i], m[i + 1:]
                for mid, c in dg.items():
                    s, w = self._sort(left + mid + right)
                    if s and not self.is_zero_mono(w):
                        _add(out, w, f.coerce(sgn * s * c))
            deg_before += self.V.degrees[g]
        return out

    def d(self, x):
        out = {}
        for m, c in x.items():
            for w, e in self.d_mono(m).items():
                _add(out, w, self.field.coerce(c * e))
        return out

    # bases ---------------------------------------------------------------------
    def monomials(self, lo=None, hi=None, max_weight=None):
        """Nonzero monomials with degree in ``[lo, hi]``, ordered by degree, weight, word."""
        mw = self.max_weight if max_weight is None else (
            max_weight if self.max_weight is None else min(max_weight, self.max_weight))
        degs = self.V.degrees
        nonneg = all(dg >= 0 for dg in degs)
        nonpos = all(dg <= 0 for dg in degs)
        if mw is None and any(dg == 0 for dg in degs) and not self.relations:
            raise ValueError("degree-zero generators need a weight bound")
        if mw is None and not (nonneg and hi is not None) and not (nonpos and lo is not None):
            if degs and not self.relations:
                raise ValueError("unbounded basis: give a weight bound or a degree window")
        found = [()]
        frontier = [()]
        w = 0
        while frontier:
            w += 1
            if mw is not None and w > mw:
                break
            if w > 10_000:
                raise ValueError("basis enumeration does not terminate")
            nxt = []
            seen = set()
            for m in frontier:
                start = m[-1] if (m and self.flavor == COMM) else 0
                for g in range(start, len(degs)):
                    s, new = self._sort(m + (g,))
                    if not s or new in seen or self.is_zero_mono(new):
                        continue
                    dg = self.mono_degree(new)
                    if nonneg and hi is not None and dg > hi and all(x > 0 for x in degs):
                        continue
                    if nonpos and lo is not None and dg < lo and all(x < 0 for x in degs):
                        continue
                    seen.add(new)
                    nxt.append(new)
            found.extend(nxt)
            frontier = nxt
        out = [m for m in found if (lo is None or self.mono_degree(m) >= lo)
               and (hi is None or self.mono_degree(m) <= hi)]
        out.sort(key=lambda m: (self.mono_degree(m), len(m), m))
        return out

    def basis(self, lo=None, hi=None):
        """``{degree: [monomials]}``."""
        out = {}
        for m in self.monomials(lo, hi):
            out.setdefault(self.mono_degree(m), []).append(m)
        return out

    def dgmodule(self, lo=None, hi=None, check=True):
        """Underlying DG module in a degree window (terms leaving it are dropped)."""
        mod = DGModule.from_boundary(self.field, self.basis(lo, hi), lambda n, m: self.d_mono(m), strict=False)
        if check:
            self.check_dsquare(mod)
        return mod

    def check_dsquare(self, mod=None, lo=None, hi=None):
        mons = [m for n in mod.degrees() for m in mod.labels(n)] if mod is not None else self.monomials(lo, hi)
        for m in mons:
            if self.d(self.d_mono(m)):
                raise DSquareNonzero(f"d^2 != 0 on {self.show(m)}", witness=m)

    def leibniz_defects(self, pairs):
        bad = []
        for a, b in pairs:
            lhs = self.d(self.mul({a: 1}, {b: 1}))
            rhs = self.mul(self.d_mono(a), {b: 1})
            sgn = -1 if self.mono_degree(a) % 2 else 1
            for m, c in self.mul({a: 1}, self.d_mono(b)).items():
                _add(rhs, m, self.field.coerce(sgn * c))
            if lhs != rhs:
                bad.append((a, b))
        return bad

    # display ---------------------------------------------------------------------
    def show(self, m):
        if not m:
            return "1"
        parts = []
        i = 0
        while i < len(m):
            j = i
            while j < len(m) and m[j] == m[i]:
                j += 1
            nm = self.V.names[m[i]]
            nm = f"{nm[1]}_{nm[0]}" if isinstance(nm, tuple) else str(nm)
            parts.append(nm if j - i == 1 else f"{nm}^{j - i}")
            i = j
        return "*".join(parts)

    def show_elem(self, x):
        if not x:
            return "0"
        return " + ".join(f"{c}*{self.show(m)}" for m, c in sorted(x.items()))

    # coproducts ------------------------------------------------------------------
    def _check_free(self):
        if self.relations:
            raise ValueError("coproducts are only available for almost free algebras")

    def power(self, n):
        """``A`` coproduct with itself ``n`` times; weight bound applies to the total.

        Monomial relations are imposed in every copy.
        """
        k = len(self.V)
        rels = [tuple(c * k + g for g in r) for r in self.relations if r is not None for c in range(n)]
        alg = FreeAlgebra(self.V.copies(n), self.flavor, self.field, self.max_weight, rels,
                          name=f"{self.name}^{n}")
        alg.copies = n
        alg.base = self
        return alg

    def copy_of(self, g):
        """Copy index of generator ``g`` in a power."""
        return g // len(self.base.V)


def _divides(r, m):
    i = 0
    for g in m:
        if i < len(r) and r[i] == g:
            i += 1
        elif i < len(r) and r[i] < g:
            return False
    return i == len(r)


def coproduct(a, b):
    """``F(O, V) u F(O, W) = F(O, V + W)`` with generators ``(0, v)`` and ``(1, w)``."""
    if a.flavor != b.flavor or a.field != b.field:
        raise ValueError("flavors or fields differ")
    a._check_free()
    b._check_free()
    mw = None
    if a.max_weight is not None and b.max_weight is not None:
        mw = max(a.max_weight, b.max_weight)
    return FreeAlgebra(a.V.direct_sum(b.V), a.flavor, a.field, mw, name=f"{a.name}u{b.name}")


class AlgebraMap:
    """Algebra homomorphism determined by images of generators."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = images  # generator index -> element of target

    def apply_mono(self, m):
        out = self.target.one()
        for g in m:
            out = self.target.mul(out, self.images[g])
            if not out:
                break
        return out

    def apply(self, x):
        out = {}
        for m, c in x.items():
            for w, e in self.apply_mono(m).items():
                _add(out, w, self.target.field.coerce(c * e))
        return out

    def commutes_with_d(self, monomials):
        return [m for m in monomials if self.apply(self.source.d_mono(m)) != self.target.d(self.apply_mono(m))]

    def is_multiplicative(self, pairs):
        return [(a, b) for a, b in pairs
                if self.apply(self.source.mul({a: 1}, {b: 1})) != self.target.mul(self.apply_mono(a), self.apply_mono(b))]


def relabel_map(src, tgt, f):
    """Map ``A^{u n} -> A^{u m}`` sending copy ``c`` to copy ``f(c)``."""
    k = len(src.base.V)
    images = {}
    for g in range(len(src.V)):
        c, h = divmod(g, k)
        images[g] = {(f(c) * k + h,): 1}
    return AlgebraMap(src, tgt, images)


def relabel_mono(src, tgt, m, f):
    """Fast path of ``relabel_map`` on a monomial: ``(sign, monomial)``."""
    k = len(src.base.V)
    word = tuple(f(g // k) * k + g % k for g in m)
    s, w = tgt._sort(word)
    if not s or tgt.is_zero_mono(w):
        return 0, None
    return s, w


def inclusions(a):
    """``l, r: A -> A u A`` into the first and second copy."""
    two = a.power(2)
    l = AlgebraMap(a, two, {g: {(g,): 1} for g in range(len(a.V))})
    r = AlgebraMap(a, two, {g: {(len(a.V) + g,): 1} for g in range(len(a.V))})
    return two, l, r


def folding(a):
    """``A u A -> A`` identifying the two copies."""
    two = a.power(2)
    k = len(a.V)
    return two, AlgebraMap(two, a, {g: {(g % k,): 1} for g in range(2 * k)})


def cyclic(a, n):
    """``tau_n`` on ``A^{u n}``: copy ``c`` goes to copy ``c + 1 mod n``."""
    p = a.power(n)
    return p, relabel_map(p, p, lambda c: (c + 1) % n)
