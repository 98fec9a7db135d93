"""Cosimplicial model of the free loop space and its cochain cototalization.

Level ``n`` is the product ``X^{n+1}``.  Cofaces duplicate a coordinate
(``d^n`` appends a copy of ``x_0``), codegeneracy ``s^j`` deletes
coordinate ``j + 1``.  Applying normalized cochains gives a simplicial
cochain complex whose total complex, in lower degree ``p - q``, has

    D x = sum_i (-1)^i (d^i)^* x + (-1)^p delta x.

The pullback ``(d^i)^*`` sends a dual basis vector ``phi_s`` either to zero
or to another dual basis vector, so the Moore subcomplex (kernel of every
``(d^i)^*`` with ``i >= 1``) is spanned by dual basis vectors: the
simplices ``s`` with ``s_i != s_{i+1}`` for ``1 <= i < p`` and
``s_p != s_0``.  It is a complement to the degenerate part, and on it
``D = (d^0)^* + (-1)^p delta``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .dgmod import DGModule, homology, verify_dsquare
from .errors import DSquareNonzero, NotSimplyConnectedProxy, SizeLimitExceeded
from .simplicial import SimplicialDGModule, normalize, tot
from .sset import (ProductSimplicialSet, SimplicialComplex, canonical, collapse, default_cap,
                   degeneracy_mask, homology_dims, identity)


def _add(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def coface(n, i, s):
    """``d^i: X^{n+1} -> X^{n+2}`` on a tuple of simplices of ``X``."""
    if i <= n:
        return s[:i + 1] + s[i:]
    return s + s[:1]


def codegeneracy(n, j, s):
    """``s^j: X^{n+2} -> X^{n+1}``, deleting coordinate ``j + 1``."""
    return s[:j + 1] + s[j + 2:]


class JonesCosimplicial:
    def __init__(self, x, P, cap=None):
        self.base = x
        self.P = P
        self.cap = default_cap() if cap is None else cap
        self._levels = {}

    def level(self, n):
        lv = self._levels.get(n)
        if lv is None:
            lv = ProductSimplicialSet([self.base] * (n + 1), cap=self.cap)
            self._levels[n] = lv
        return lv

    coface = staticmethod(coface)
    codegeneracy = staticmethod(codegeneracy)

    def check_identities(self, top_dim=1, levels=None):
        """Cosimplicial identities on all tuples of simplices of dimension ``<= top_dim``.

        Identities are checked with sources in levels ``0..levels`` (default
        ``P - 1``), so every map involved stays within level ``P + 1``.
        """
        x = self.base
        top = self.P - 1 if levels is None else levels
        bad = []
        for q in range(top_dim + 1):
            simps = x.simplices(q)
            for n in range(top + 1):
                for s in _tuples(simps, n + 1, self.cap):
                    for j in range(n + 2):
                        for i in range(j):
                            if coface(n + 1, j, coface(n, i, s)) != coface(n + 1, i, coface(n, j - 1, s)):
                                bad.append((f"d{j}d{i}", n, s))
                    for j in range(n):
                        for i in range(j + 1):
                            # s^j s^i = s^i s^{j+1} on level n + 2 -> n
                            t = s + s[:2]  # a level n + 2 tuple built from s
                            if codegeneracy(n, j, codegeneracy(n + 1, i, t)) != \
                                    codegeneracy(n, i, codegeneracy(n + 1, j + 1, t)):
                                bad.append((f"s{j}s{i}", n, s))
                    if n >= 1:
                        for j in range(n):
                            for i in range(n + 2):
                                lhs = codegeneracy(n, j, coface(n, i, s))
                                if i < j:
                                    rhs = coface(n - 1, i, codegeneracy(n - 1, j - 1, s))
                                elif i in (j, j + 1):
                                    rhs = s
                                else:
                                    rhs = coface(n - 1, i - 1, codegeneracy(n - 1, j, s))
                                if lhs != rhs:
                                    bad.append((f"s{j}d{i}", n, s))
        return bad


def _tuples(simps, k, cap):
    if len(simps) ** k > cap:
        raise SizeLimitExceeded(f"{len(simps) ** k} tuples exceed cap {cap}")
    out = [()]
    for _ in range(k):
        out = [t + (s,) for t in out for s in simps]
    return out


def jones_model(x, P, cap=None, check=False):
    j = JonesCosimplicial(x, P, cap)
    if check:
        bad = j.check_identities()
        if bad:
            raise DSquareNonzero(f"cosimplicial identity fails: {bad[0]}")
    return j


def moore_simplices(x, p, q, cap=None):
    """Nondegenerate ``q``-simplices ``s`` of ``X^{p+1}`` in the Moore part of level ``p``."""
    cap = default_cap() if cap is None else cap
    simps = x.simplices(q)
    masks = [degeneracy_mask(s[1]) for s in simps]
    full = (1 << q) - 1
    out = []
    idx = [0] * (p + 1)

    def rec(k, common):
        if k == p + 1:
            if not common and (p == 0 or idx[p] != idx[0]):
                out.append(tuple(simps[i] for i in idx))
                if len(out) > cap:
                    raise SizeLimitExceeded(f"level {p} dimension {q}: more than {cap} simplices")
            return
        for i, m in enumerate(masks):
            if k >= 2 and i == idx[k - 1]:
                continue
            idx[k] = i
            rec(k + 1, common & m)

    rec(0, full)
    return out


def _nd_faces(s, q, x):
    """Faces of a tuple-simplex that are nondegenerate: ``[(i, face)]``."""
    ident = identity(q - 1)
    out = []
    for i in range(q + 1):
        red, theta = canonical(tuple(x.face_simplex(c, i) for c in s))
        if theta == ident:
            out.append((i, red))
    return out


@dataclass
class Cototal:
    module: DGModule
    P: int
    window: tuple

    def betti(self):
        """``{m: dim}`` for cohomological degrees strictly inside the window."""
        lo, hi = self.window
        h = homology(self.module, lo + 1, hi - 1)
        return {-n: d for n, d in h.items()}


def cototal(j, field, P, window, cap=None, check=True):
    """Moore-normalized cototal with labels ``(p, s)`` in lower degrees ``window``."""
    x = j.base
    cap = j.cap if cap is None else cap
    lo, hi = window
    top = x.max_dim()
    basis = {}
    moore = {}
    for p in range(P + 1):
        qmax = p - lo
        if top is not None:
            qmax = min(qmax, top * (p + 1))
        for q in range(max(0, p - hi), qmax + 1):
            ss = moore_simplices(x, p, q, cap)
            moore[p, q] = ss
            if ss:
                basis.setdefault(p - q, []).extend((p, s) for s in ss)
    # coboundary table from faces of the (q+1)-simplices
    cob = {}
    for (p, q), ss in moore.items():
        if q == 0:
            continue
        for t in ss:
            for i, f in _nd_faces(t, q, x):
                row = cob.setdefault((p, f), {})
                _add(row, t, -1 if i % 2 else 1)

    def boundary(n, lab):
        p, s = lab
        out = {}
        if p >= 1 and s[0] == s[1]:
            out[(p - 1, s[:1] + s[2:])] = 1
        sg = -1 if p % 2 else 1
        for t, c in cob.get((p, s), {}).items():
            _add(out, (p, t), sg * c)
        return out

    m = DGModule.from_boundary(field, basis, boundary, strict=False)
    if check:
        rep = verify_dsquare(m)
        if not rep.ok:
            raise DSquareNonzero(f"D^2 != 0 in degree {rep.violations[0][0] + 1}")
    return Cototal(m, P, window)


def cochain_simplicial(x, field, qmax, cap=None):
    """Normalized cochains of the levels as a simplicial DG module (full, unnormalized levels).

    Used as an independent route: its ``Tot / D`` must agree with the Moore model.
    """
    from .sset import normalized_cochains

    j = JonesCosimplicial(x, 0, cap)
    simps = {q: x.simplices(q) for q in range(qmax + 1)}

    def level(p):
        return normalized_cochains(j.level(p), field, qmax)

    def face(p, i, s):
        # (d^i)^* phi_s, d^i: X^p -> X^{p+1}
        if i < p:
            return {s[:i + 1] + s[i + 2:]: 1} if s[i] == s[i + 1] else {}
        return {s[:p]: 1} if s[p] == s[0] else {}

    def degen(p, jj, s):
        # (s^j)^* phi_s: insert any simplex at coordinate j + 1
        q = len(s[0][1]) - 1
        return {s[:jj + 1] + (z,) + s[jj + 1:]: 1 for z in simps[q]}

    return SimplicialDGModule(field, level, face, degen, f"C*({x})")


def cototal_via_quotient(x, field, P, window, cap=None):
    """Betti numbers of ``Tot / D`` built from full cochains; ``{m: dim}``."""
    lo, hi = window
    s = cochain_simplicial(x, field, P - lo, cap)
    n, _ = normalize(s, P, window=window)
    h = homology(n, lo + 1, hi - 1)
    return {-k: d for k, d in h.items()}


def h1_proxy(x, field):
    return homology_dims(x, field, 2).get(1, 0)


def loop_betti(x, field, P, max_degree, cap=None, use_collapse=True):
    """``{m: (dim, stable)}`` for cohomological degrees ``0..max_degree``.

    ``stable`` means the dimension is unchanged at level bound ``P + 1``.
    """
    if h1_proxy(x, field):
        raise NotSimplyConnectedProxy(f"H^1({x}) != 0 over {field.name}")
    y = collapse(x) if use_collapse and isinstance(x, SimplicialComplex) else x
    window = (-max_degree - 1, 1)
    # the larger build goes first so a size cap fails fast
    nxt = cototal(jones_model(y, P + 1, cap), field, P + 1, window, cap).betti()
    cur = cototal(jones_model(y, P, cap), field, P, window, cap).betti()
    return {m: (cur.get(m, 0), cur.get(m, 0) == nxt.get(m, 0)) for m in range(max_degree + 1)}
