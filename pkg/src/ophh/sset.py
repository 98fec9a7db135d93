"""Finite simplicial sets presented by their nondegenerate simplices.

An arbitrary ``n``-simplex is a pair ``(y, eta)`` where ``y`` is a
nondegenerate ``m``-simplex and ``eta`` is a monotone surjection
``[n] -> [m]`` stored as a tuple of length ``n + 1``.  The simplex is
nondegenerate exactly when ``eta`` is the identity.  Faces of
nondegenerate simplices are supplied by subclasses through
``nd_face(m, v, y) -> (z, theta)``; everything else is derived.
"""
from __future__ import annotations

import os
from functools import lru_cache
from itertools import combinations

from .dgmod import DGModule
from .errors import ParseError, SizeLimitExceeded

DEFAULT_CAP = 300_000


def default_cap():
    env = os.environ.get("OPHH_CAP")
    return int(env) if env else DEFAULT_CAP


def identity(n):
    return tuple(range(n + 1))


@lru_cache(maxsize=None)
def surjections(n, m):
    """Monotone surjections ``[n] -> [m]`` in lexicographic order."""
    out = []
    for steps in combinations(range(1, n + 1), m):
        eta, v, st = [], 0, set(steps)
        for t in range(n + 1):
            if t in st:
                v += 1
            eta.append(v)
        out.append(tuple(eta))
    return tuple(out)


def degeneracy_mask(eta):
    """Bit ``t`` set when ``eta`` identifies ``t`` and ``t + 1``."""
    mask = 0
    for t in range(len(eta) - 1):
        if eta[t] == eta[t + 1]:
            mask |= 1 << t
    return mask


class FiniteSimplicialSet:
    name = "X"

    # subclass interface --------------------------------------------------
    def nondegenerate(self, n):
        raise NotImplementedError

    def nd_face(self, m, v, y):
        raise NotImplementedError

    def max_dim(self):
        """Upper bound for the dimension of nondegenerate simplices, or None."""
        return None

    # derived operations ----------------------------------------------------
    def face_simplex(self, s, i):
        y, eta = s
        v = eta[i]
        rest = eta[:i] + eta[i + 1:]
        if (i > 0 and eta[i - 1] == v) or (i + 1 < len(eta) and eta[i + 1] == v):
            return (y, rest)
        z, theta = self.nd_face(len(set(eta)) - 1, v, y)
        return (z, tuple(theta[e if e < v else e - 1] for e in rest))

    def degen_simplex(self, s, j):
        y, eta = s
        return (y, eta[:j + 1] + eta[j:])

    def face(self, n, i, s):
        return self.face_simplex(s, i)

    def degen(self, n, j, s):
        return self.degen_simplex(s, j)

    def simplices(self, n):
        """All ``n``-simplices, degenerate ones included."""
        out = []
        top = n if self.max_dim() is None else min(n, self.max_dim())
        for m in range(top + 1):
            for y in self.nondegenerate(m):
                for eta in surjections(n, m):
                    out.append((y, eta))
        return out

    def nondegenerate_simplex(self, y, n):
        return (y, identity(n))

    def count(self, n):
        return len(self.nondegenerate(n))

    def counts(self, top):
        return [self.count(n) for n in range(top + 1)]

    def euler_characteristic(self, top):
        return sum((-1) ** n * c for n, c in enumerate(self.counts(top)))

    def check_identities(self, top):
        """Simplicial identities on every simplex of dimension ``<= top``.

        Returns a list of ``(identity, n, simplex)`` failures.
        """
        bad = []
        for n in range(top + 1):
            for s in self.simplices(n):
                for j in range(n + 1):
                    sj = self.degen_simplex(s, j)
                    for i in range(n + 2):
                        lhs = self.face_simplex(sj, i)
                        if i < j:
                            rhs = self.degen_simplex(self.face_simplex(s, i), j - 1)
                        elif i in (j, j + 1):
                            rhs = s
                        else:
                            rhs = self.degen_simplex(self.face_simplex(s, i - 1), j)
                        if lhs != rhs:
                            bad.append((f"d{i}s{j}", n, s))
                    for i in range(j + 1):
                        if self.degen_simplex(sj, i) != self.degen_simplex(self.degen_simplex(s, i), j + 1):
                            bad.append((f"s{i}s{j}", n, s))
                if n >= 2:
                    for j in range(n + 1):
                        dj = self.face_simplex(s, j)
                        for i in range(j):
                            if self.face_simplex(dj, i) != self.face_simplex(self.face_simplex(s, i), j - 1):
                                bad.append((f"d{i}d{j}", n, s))
        return bad

    def __str__(self):
        return self.name


class TableSimplicialSet(FiniteSimplicialSet):
    """Simplicial set given by explicit tables of nondegenerate faces.

    ``faces[y]`` lists ``(z, theta)`` for ``i = 0..m`` where ``m`` is the
    dimension of ``y``.
    """

    def __init__(self, nondeg, faces, name="X"):
        self._nd = {n: tuple(v) for n, v in nondeg.items() if v}
        self._faces = {y: tuple(fs) for y, fs in faces.items()}
        self.name = name
        self._dim = {y: n for n, v in self._nd.items() for y in v}
        for y, fs in self._faces.items():
            if len(fs) != self._dim[y] + 1:
                raise ValueError(f"{y!r} needs {self._dim[y] + 1} faces")

    def nondegenerate(self, n):
        return self._nd.get(n, ())

    def nd_face(self, m, v, y):
        return self._faces[y][v]

    def max_dim(self):
        return max(self._nd) if self._nd else -1

    def dim_of(self, y):
        return self._dim[y]


def point():
    return TableSimplicialSet({0: ["*"]}, {}, "point")


def circle():
    """One vertex ``v`` and one edge ``e`` with both faces ``v``."""
    return TableSimplicialSet({0: ["v"], 1: ["e"]}, {"e": [("v", (0,)), ("v", (0,))]}, "K")


def circle_element(n, k):
    """The simplex of the circle corresponding to ``k`` in ``Z/(n+1)``."""
    if k == 0:
        return ("v", (0,) * (n + 1))
    return ("e", tuple(0 if t < k else 1 for t in range(n + 1)))


def circle_index(s):
    y, eta = s
    return 0 if y == "v" else eta.index(1)


class SimplicialComplex(TableSimplicialSet):
    """Ordered simplicial complex: simplices are increasing vertex tuples."""

    def __init__(self, facets, name="complex"):
        simplices = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            if not f:
                continue
            for r in range(1, len(f) + 1):
                simplices.update(combinations(f, r))
        nondeg = {}
        for s in sorted(simplices):
            nondeg.setdefault(len(s) - 1, []).append(s)
        faces = {}
        for n, ss in nondeg.items():
            if n == 0:
                continue
            ident = identity(n - 1)
            for s in ss:
                faces[s] = [(s[:i] + s[i + 1:], ident) for i in range(n + 1)]
        self.facets = sorted({tuple(sorted(set(f))) for f in facets if f})
        super().__init__(nondeg, faces, name)


def simplex(n):
    return SimplicialComplex([tuple(range(n + 1))], f"Delta^{n}")


def boundary_simplex(n):
    return SimplicialComplex(list(combinations(range(n + 1), n)), f"dDelta^{n}")


def torus():
    """Seven-vertex triangulation of the torus."""
    tri = []
    for i in range(7):
        tri.append((i, (i + 1) % 7, (i + 3) % 7))
        tri.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(tri, "torus")


def parse_facets(text, name="complex"):
    """Facet list: one facet per line, vertices separated by spaces or commas."""
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = line.replace(",", " ").split()
        verts = []
        for tok in toks:
            col = raw.index(tok) + 1
            try:
                verts.append(int(tok))
            except ValueError:
                if not tok.isidentifier():
                    raise ParseError(f"bad vertex label {tok!r}", lineno, col) from None
                verts.append(tok)
        if len({type(v) for v in verts}) > 1:
            raise ParseError("mixed integer and named vertices", lineno, 1)
        if len(set(verts)) != len(verts):
            raise ParseError("repeated vertex in facet", lineno, 1)
        facets.append(tuple(verts))
    if not facets:
        raise ParseError("no facets", 1, 1)
    kinds = {type(v) for f in facets for v in f}
    if len(kinds) > 1:
        raise ParseError("mixed integer and named vertices", 1, 1)
    return SimplicialComplex(facets, name)


def canonical(simps):
    """Write a tuple of equal-dimension simplices as ``(nondegenerate tuple, theta)``."""
    n = len(simps[0][1]) - 1
    common = (1 << n) - 1
    for _, eta in simps:
        common &= degeneracy_mask(eta)
    if not common:
        return simps, identity(n)
    theta, keep, v = [0], [0], 0
    for t in range(n):
        if not (common >> t) & 1:
            v += 1
            keep.append(t + 1)
        theta.append(v)
    red = tuple((y, tuple(eta[t] for t in keep)) for y, eta in simps)
    return red, tuple(theta)


class ProductSimplicialSet(FiniteSimplicialSet):
    """Product of finitely many simplicial sets.

    A nondegenerate ``n``-simplex is a tuple of ``n``-simplices of the
    factors with no degeneracy index common to all of them.
    """

    def __init__(self, factors, cap=None, name=None):
        self.factors = tuple(factors)
        self.cap = default_cap() if cap is None else cap
        self.name = name or " x ".join(str(f) for f in factors)
        self._nd = {}

    def max_dim(self):
        dims = [f.max_dim() for f in self.factors]
        if any(d is None for d in dims):
            return None
        return sum(dims)

    def count(self, n):
        """Number of nondegenerate ``n``-simplices by inclusion-exclusion."""
        if n in self._nd:
            return len(self._nd[n])
        total = 0
        for r in range(n + 1):
            # simplices whose degeneracy set contains a fixed r-set T
            prod = 1
            for f in self.factors:
                prod *= sum(f.count(m) * _comb(n - r, m) for m in range(n - r + 1))
            total += (-1) ** r * _comb(n, r) * prod
        return total

    def nondegenerate(self, n):
        got = self._nd.get(n)
        if got is not None:
            return got
        c = self.count(n)
        if c > self.cap:
            raise SizeLimitExceeded(f"{self.name}: {c} nondegenerate {n}-simplices exceed cap {self.cap}")
        per = [f.simplices(n) for f in self.factors]
        masks = [[degeneracy_mask(s[1]) for s in ss] for ss in per]
        full = (1 << n) - 1
        out = []

        def rec(k, acc, common):
            if k == len(per):
                if not common:
                    out.append(tuple(acc))
                return
            for s, m in zip(per[k], masks[k]):
                acc.append(s)
                rec(k + 1, acc, common & m)
                acc.pop()

        rec(0, [], full)
        self._nd[n] = tuple(out)
        return self._nd[n]

    def nd_face(self, m, v, y):
        return canonical(tuple(f.face_simplex(s, v) for f, s in zip(self.factors, y)))


def _comb(n, k):
    from math import comb

    return comb(n, k) if 0 <= k <= n else 0


def product(*factors, cap=None):
    return ProductSimplicialSet(factors, cap)


def normalized_chains(x, field, top):
    """Normalized chains in degrees ``0..top``; degenerate faces are dropped."""
    basis = {n: list(x.nondegenerate(n)) for n in range(top + 1)}
    ident = {n: identity(n) for n in range(top + 1)}

    def boundary(n, y):
        out = {}
        for i in range(n + 1):
            z, theta = x.nd_face(n, i, y)
            if theta == ident[n - 1]:
                out[z] = out.get(z, 0) + (-1) ** i
        return out

    return DGModule.from_boundary(field, basis, boundary)


def normalized_cochains(x, field, top):
    """Normalized cochains; cochain degree ``q`` sits in degree ``-q``.

    The coboundary is the transpose of the chain boundary.  Degree ``top``
    cochains are included, so the coboundary out of them is cut off.
    """
    ch = normalized_chains(x, field, top)
    basis = {-n: labels for n, labels in ch.basis.items()}
    diffs = {-(n - 1): ch.d(n).transpose() for n in range(1, top + 1)}
    return DGModule(field, basis, diffs)


def homology_dims(x, field, top):
    """Homology of normalized chains in degrees ``0..top - 1``."""
    from .dgmod import homology

    return homology(normalized_chains(x, field, top), 0, top - 1)


def collapsible_subcomplex(k, start=None):
    """Grow a collapsible subcomplex of a simplicial complex by elementary expansions.

    Starting from a vertex, repeatedly add a pair ``(tau, sigma)`` where
    ``tau`` is a codimension-one face of ``sigma``, neither is present yet
    and every other face of ``sigma`` is.  Each step preserves the homotopy
    type, so the result is contractible.
    """
    all_s = [s for n in range(k.max_dim() + 1) for s in k.nondegenerate(n)]
    start = start if start is not None else k.nondegenerate(0)[0]
    got = {start}
    changed = True
    while changed:
        changed = False
        for sigma in all_s:
            if sigma in got or len(sigma) < 2:
                continue
            fs = [sigma[:i] + sigma[i + 1:] for i in range(len(sigma))]
            missing = [f for f in fs if f not in got]
            if len(missing) != 1:
                continue
            tau = missing[0]
            if len(tau) > 1 and any(tau[:i] + tau[i + 1:] not in got for i in range(len(tau))):
                continue
            got.add(tau)
            got.add(sigma)
            changed = True
    return got


BASEPOINT = ()


class QuotientSimplicialSet(TableSimplicialSet):
    """``X / A`` for a subcomplex ``A`` of a simplicial complex ``X``.

    ``A`` is collapsed to the basepoint ``()``.
    """

    def __init__(self, x, sub, name=None):
        nondeg = {0: [BASEPOINT]}
        faces = {}
        for n in range(x.max_dim() + 1):
            for y in x.nondegenerate(n):
                if y in sub:
                    continue
                nondeg.setdefault(n, [])
                if n > 0:
                    fl = []
                    for i in range(n + 1):
                        z, theta = x.nd_face(n, i, y)
                        if z in sub:
                            fl.append((BASEPOINT, (0,) * n))
                        else:
                            fl.append((z, theta))
                    faces[y] = fl
                nondeg[n].append(y)
        self.source = x
        self.collapsed = frozenset(sub)
        super().__init__(nondeg, faces, name or f"{x.name}/A")

    def project(self, s):
        """Image of a simplex of ``X`` (as ``(y, eta)``)."""
        y, eta = s
        if y in self.collapsed:
            return (BASEPOINT, (0,) * len(eta))
        return s


def collapse(x):
    """Quotient of a simplicial complex by a maximal collapsible subcomplex."""
    sub = collapsible_subcomplex(x)
    return QuotientSimplicialSet(x, sub)
