"""Simplicial DG modules: totalization, normalization and shuffle maps.

A simplicial DG module is given lazily by three callables: ``level(p)``
returns the DG module in simplicial degree ``p`` and ``face(p, i, x)`` /
``degen(p, j, x)`` return the image of a basis label ``x`` of level ``p``
as a sparse element of level ``p - 1`` / ``p + 1``.

Total complexes use labels ``(p, x)`` in degree ``p + |x|`` and the
differential

    d(p, x) = sum_i (-1)^i d_i x + (-1)^p d_A x,

which squares to zero whenever faces commute with ``d_A``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable

from .dgmod import ChainMap, DGModule, tensor
from .errors import NotClosed
from .exactlin import Echelon


def _add(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class SimplicialDGModule:
    def __init__(self, field, level: Callable, face: Callable, degen: Callable, name=""):
        self.field = field
        self._level = level
        self._face = face
        self._degen = degen
        self.name = name
        self._cache = {}
        self._deg = {}

    def level(self, p) -> DGModule:
        m = self._cache.get(p)
        if m is None:
            m = self._level(p)
            self._cache[p] = m
            self._deg[p] = {x: q for q in m.degrees() for x in m.labels(q)}
        return m

    def degree(self, p, x):
        self.level(p)
        return self._deg[p][x]

    def face(self, p, i, x):
        return self._face(p, i, x)

    def degen(self, p, j, x):
        return self._degen(p, j, x)

    def face_elem(self, p, i, elem):
        out = {}
        for x, c in elem.items():
            for y, e in self._face(p, i, x).items():
                _add(out, y, c * e)
        return out

    def degen_elem(self, p, j, elem):
        out = {}
        for x, c in elem.items():
            for y, e in self._degen(p, j, x).items():
                _add(out, y, c * e)
        return out

    def internal_d(self, p, elem):
        m = self.level(p)
        out = {}
        for x, c in elem.items():
            q = self._deg[p][x]
            for y, e in m.apply_d(q, {x: 1}).items():
                _add(out, y, c * e)
        return out

    # common constructions -------------------------------------------------
    @classmethod
    def constant(cls, module, name="constant"):
        ident = lambda p, i, x: {x: 1}
        return cls(module.field, lambda p: module, ident, ident, name)

    @classmethod
    def from_sets(cls, field, sset, name=""):
        """Levelwise free module on a simplicial set, concentrated in degree 0."""
        def level(p):
            return DGModule(field, {0: sset.simplices(p)})

        return cls(field, level, lambda p, i, x: {sset.face(p, i, x): 1},
                   lambda p, j, x: {sset.degen(p, j, x): 1}, name or f"k[{sset}]")


@dataclass
class IdentityReport:
    failures: list = dc_field(default_factory=list)  # (identity, level, label)
    checked: int = 0

    @property
    def ok(self):
        return not self.failures


def check_simplicial_identities(s, P, max_failures=20):
    """Check all simplicial identities on basis labels of levels ``<= P``."""
    rep = IdentityReport()

    def fail(name, p, x):
        if len(rep.failures) < max_failures:
            rep.failures.append((name, p, x))

    for p in range(P + 1):
        lvl = s.level(p)
        for q in lvl.degrees():
            for x in lvl.labels(q):
                e = {x: 1}
                rep.checked += 1
                # faces and degeneracies are chain maps
                dx = s.internal_d(p, e)
                if p >= 1:
                    for i in range(p + 1):
                        if s.internal_d(p - 1, s.face(p, i, x)) != s.face_elem(p, i, dx):
                            fail(f"d_A d_{i} = d_{i} d_A", p, x)
                for j in range(p + 1):
                    if s.internal_d(p + 1, s.degen(p, j, x)) != s.degen_elem(p, j, dx):
                        fail(f"d_A s_{j} = s_{j} d_A", p, x)
                # d_i d_j = d_{j-1} d_i, i < j
                if p >= 2:
                    for j in range(p + 1):
                        dj = s.face(p, j, x)
                        for i in range(j):
                            if s.face_elem(p - 1, i, dj) != s.face_elem(p - 1, j - 1, s.face(p, i, x)):
                                fail(f"d_{i} d_{j} = d_{j - 1} d_{i}", p, x)
                # s_i s_j = s_{j+1} s_i, i <= j
                for j in range(p + 1):
                    sj = s.degen(p, j, x)
                    for i in range(j + 1):
                        if s.degen_elem(p + 1, i, sj) != s.degen_elem(p + 1, j + 1, s.degen(p, i, x)):
                            fail(f"s_{i} s_{j} = s_{j + 1} s_{i}", p, x)
                # mixed identities
                for j in range(p + 1):
                    sj = s.degen(p, j, x)
                    for i in range(p + 2):
                        lhs = s.face_elem(p + 1, i, sj)
                        if i < j:
                            rhs = s.degen_elem(p - 1, j - 1, s.face(p, i, x))
                            name = f"d_{i} s_{j} = s_{j - 1} d_{i}"
                        elif i in (j, j + 1):
                            rhs = e
                            name = f"d_{i} s_{j} = id"
                        else:
                            rhs = s.degen_elem(p - 1, j, s.face(p, i - 1, x))
                            name = f"d_{i} s_{j} = s_{j} d_{i - 1}"
                        if lhs != rhs:
                            fail(name, p, x)
    return rep


class TotalComplex(DGModule):
    """Total complex truncated at simplicial level ``P``."""

    P: int


def _tot_basis(s, P, window=None):
    basis = {}
    for p in range(P + 1):
        lvl = s.level(p)
        for q in lvl.degrees():
            if window is not None and not window[0] <= p + q <= window[1]:
                continue
            basis.setdefault(p + q, []).extend((p, x) for x in lvl.labels(q))
    return basis


def tot_boundary(s):
    def boundary(n, lab):
        p, x = lab
        out = {}
        if p >= 1:
            for i in range(p + 1):
                sgn = -1 if i % 2 else 1
                for y, c in s.face(p, i, x).items():
                    _add(out, (p - 1, y), sgn * c)
        sgn = -1 if p % 2 else 1
        for y, c in s.internal_d(p, {x: 1}).items():
            _add(out, (p, y), sgn * c)
        return out

    return boundary


def tot(s, P, window=None):
    """Total complex of levels ``0..P``.

    ``window = (lo, hi)`` keeps total degrees in that range; boundaries
    falling below ``lo`` are dropped, so homology is only meaningful in
    ``lo + 1 .. hi - 1``.
    """
    m = DGModule.from_boundary(s.field, _tot_basis(s, P, window), tot_boundary(s),
                               strict=window is None)
    t = TotalComplex(m.field, m.basis, m.diffs)
    t.P = P
    t.window = window
    return t


def tot_stable_degree(P, min_internal=0):
    """Largest total degree unaffected by cutting at level ``P``.

    Valid when every level is concentrated in internal degrees
    ``>= min_internal``: level ``P + 1`` then starts in total degree
    ``P + 1 + min_internal``.
    """
    return P - 1 + min_internal


@dataclass
class Subcomplex:
    """Span of vectors inside a DG module, stored per degree as an echelon basis."""

    ambient: DGModule
    spans: dict

    def dim(self, n):
        sp = self.spans.get(n)
        return len(sp) if sp is not None else 0

    def dims(self):
        return {n: len(e) for n, e in self.spans.items() if len(e)}


def degenerate_subcomplex(s, P, t=None, verify=True):
    """Span of degenerate elements in ``tot(s, P)``; closure under d is verified."""
    t = t if t is not None else tot(s, P)
    spans = {n: Echelon(s.field) for n in t.degrees()}
    for p in range(P):
        lvl = s.level(p)
        for q in lvl.degrees():
            n = p + 1 + q
            if n not in spans:
                continue
            for x in lvl.labels(q):
                for j in range(p + 1):
                    img = {(p + 1, y): c for y, c in s.degen(p, j, x).items()}
                    if img:
                        spans[n].add(t.to_vector(n, img))
    sub = Subcomplex(t, spans)
    if verify:
        for n, ech in spans.items():
            for row in ech.rows.values():
                dv = t.d(n).apply(row)
                if dv and n - 1 in spans and not spans[n - 1].contains(dv):
                    raise NotClosed(f"differential leaves the degenerate subcomplex in degree {n}")
    return sub


def quotient(t, sub):
    """Quotient ``t / sub`` with labels the non-pivot labels of ``t``.

    Returns the quotient module and the projection ``t -> quotient``.
    """
    qbasis = {}
    for n in t.degrees():
        piv = sub.spans.get(n)
        pivots = piv.rows if piv is not None else {}
        qbasis[n] = [lab for i, lab in enumerate(t.labels(n)) if i not in pivots]

    def project(n, elem):
        ech = sub.spans.get(n)
        vec = t.to_vector(n, elem)
        if ech is not None:
            vec = ech.reduce(vec)
        return t.to_element(n, vec)

    def boundary(n, lab):
        return project(n - 1, t.apply_d(n, {lab: 1}))

    q = DGModule.from_boundary(t.field, qbasis, boundary)
    proj = ChainMap.from_function(t, q, lambda n, lab: project(n, {lab: 1}))
    return q, proj


def normalize(s, P, t=None, window=None):
    """``(N, projection)`` with ``N = tot(s, P) / D``."""
    t = t if t is not None else tot(s, P, window)
    sub = degenerate_subcomplex(s, P, t)
    n, proj = quotient(t, sub)
    n.P = P
    return n, proj


def levelwise_product(a, b):
    """Level ``n`` is ``a_n (x) b_n``; faces and degeneracies act diagonally."""
    if a.field != b.field:
        raise ValueError("fields differ")

    def level(p):
        return tensor(a.level(p), b.level(p))

    def diag(fa, fb):
        def op(p, i, lab):
            x, y = lab
            out = {}
            for u, c in fa(p, i, x).items():
                for v, e in fb(p, i, y).items():
                    _add(out, (u, v), c * e)
            return out

        return op

    return SimplicialDGModule(a.field, level, diag(a.face, b.face), diag(a.degen, b.degen),
                              f"({a.name} x {b.name})")


def _perm_sign(seq):
    sgn = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sgn = -sgn
    return sgn


def shuffles(p, q):
    """``(p, q)``-shuffles as ``(mu, nu, sign)``; ``mu`` a p-subset of ``0..p+q-1``."""
    out = []
    for mu in combinations(range(p + q), p):
        nu = tuple(i for i in range(p + q) if i not in mu)
        out.append((mu, nu, _perm_sign(mu + nu)))
    return out


def _iter_degen(s, p, idx, elem):
    for k in idx:
        elem = s.degen_elem(p, k, elem)
        p += 1
    return elem


def shuffle_element(a, b, la, lb):
    """Shuffle of two total-complex labels ``(p, x)``, ``(q, y)`` into ``Tot(a x b)``."""
    p, x = la
    q, y = lb
    sgn0 = -1 if (q * a.degree(p, x)) % 2 else 1
    out = {}
    for mu, nu, sgn in shuffles(p, q):
        u = _iter_degen(a, p, nu, {x: 1})
        v = _iter_degen(b, q, mu, {y: 1})
        for s1, c in u.items():
            for s2, e in v.items():
                _add(out, (p + q, (s1, s2)), sgn0 * sgn * c * e)
    return out


def shuffle(a, b, P):
    """Shuffle chain map ``Tot(a) (x) Tot(b) -> Tot(a x b)`` on pairs with ``p + q <= P``."""
    ta, tb = tot(a, P), tot(b, P)
    src_full = tensor(ta, tb)
    src = restrict(src_full, lambda n, lab: lab[0][0] + lab[1][0] <= P)
    ab = levelwise_product(a, b)
    tgt = tot(ab, P)
    f = ChainMap.from_function(src, tgt, lambda n, lab: shuffle_element(a, b, lab[0], lab[1]))
    f.product = ab
    return f


def restrict(m, keep):
    """Sub-DG-module on the labels selected by ``keep(n, label)``; must be closed."""
    basis = {n: [lab for lab in m.labels(n) if keep(n, lab)] for n in m.degrees()}

    def boundary(n, lab):
        img = m.apply_d(n, {lab: 1})
        for t in img:
            if not keep(n - 1, t):
                raise NotClosed(f"d({lab!r}) leaves the selected labels")
        return img

    return DGModule.from_boundary(m.field, basis, boundary)


def iterated_shuffle_element(factors, labels):
    """Left-bracketed shuffle ``sh(sh(x1, x2), x3) ...``; ``k = len - 1`` shuffles."""
    if len(factors) == 1:
        return {labels[0]: 1}, factors[0]
    acc, prod = iterated_shuffle_element(factors[:-1], labels[:-1])
    out = {}
    for lab, c in acc.items():
        for t, e in shuffle_element(prod, factors[-1], lab, labels[-1]).items():
            _add(out, t, c * e)
    return out, levelwise_product(prod, factors[-1])


def iterated_shuffle(k, factors, P):
    """``sh^k``: ``Tot(f_0) (x) ... (x) Tot(f_k) -> Tot(f_0 x ... x f_k)``.

    ``sh^0`` is the identity.  The source carries left-nested pair labels.
    """
    if len(factors) != k + 1:
        raise ValueError("need k + 1 factors")
    src = tot(factors[0], P)
    for f in factors[1:]:
        src = tensor(src, tot(f, P))

    def flat(lab, m):
        if m == 0:
            return [lab]
        return flat(lab[0], m - 1) + [lab[1]]

    src = restrict(src, lambda n, lab: sum(t[0] for t in flat(lab, k)) <= P)
    prod = factors[0]
    for f in factors[1:]:
        prod = levelwise_product(prod, f)
    tgt = tot(prod, P)

    def fn(n, lab):
        return iterated_shuffle_element(factors, flat(lab, k))[0]

    mp = ChainMap.from_function(src, tgt, fn)
    mp.product = prod
    return mp
