"""The associative, commutative and Barratt-Eccles operads.

Permutations of ``{0, ..., n-1}`` are tuples ``w``; in ``A(n)`` the word
``w`` stands for the operation ``x_{w[0]} x_{w[1]} ... x_{w[n-1]}``.
The right action is ``(w . s)[t] = s^{-1}(w[t])``, which makes
evaluation equivariant for the left action ``(s . x)_i = x_{s^{-1}(i)}``
on tensor powers.

``E(n)`` has basis the tuples ``(g_0, ..., g_d)`` of permutations with
no two consecutive entries equal (normalized homogeneous bar
construction), differential the alternating sum of deletions and the
diagonal action.  Composition is the Eilenberg-Zilber lattice-path sum
followed by block substitution of permutations in each vertex.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations, product as iproduct
from math import factorial

from .dgmod import DGModule
from .exactlin import Q


def _add(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def perms(n):
    return list(permutations(range(n)))


def perm_identity(n):
    return tuple(range(n))


def perm_inverse(s):
    inv = [0] * len(s)
    for i, v in enumerate(s):
        inv[v] = i
    return tuple(inv)


def perm_sign(s):
    sgn, seen = 1, [False] * len(s)
    for i in range(len(s)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = s[j]
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


def act_word(w, s):
    """Right action of ``s`` on the word ``w``."""
    inv = perm_inverse(s)
    return tuple(inv[x] for x in w)


def substitute(w, us):
    """Block substitution: letter ``i`` of ``w`` becomes ``us[i]`` shifted."""
    offs, o = [], 0
    for u in us:
        offs.append(o)
        o += len(u)
    out = []
    for x in w:
        out.extend(offs[x] + y for y in us[x])
    return tuple(out)


def block_permutation(s, arities):
    """Permutation of concatenated blocks induced by ``s`` on blocks.

    Satisfies ``gamma(mu . s; nus) = gamma(mu; nus permuted) . block``.
    """
    n = len(s)
    inv = perm_inverse(s)
    offs, o = [], 0
    for k in arities:
        offs.append(o)
        o += k
    # output slot i holds input block inv[i]
    pre = []
    for i in range(n):
        b = inv[i]
        pre.extend(offs[b] + r for r in range(arities[b]))
    # (beta . x)_j = x_{beta^{-1}(j)} and the j-th output entry is x_{pre[j]}
    return perm_inverse(tuple(pre))


def block_sum(taus):
    out, o = [], 0
    for t in taus:
        out.extend(o + x for x in t)
        o += len(t)
    return tuple(out)


class Operad:
    """Arity-indexed family of DG modules with action and composition on labels."""

    name = "O"
    field = Q

    def labels(self, n, d):
        raise NotImplementedError

    def degree(self, n, label):
        return 0

    def arity(self, label):
        raise NotImplementedError

    def act(self, label, s):
        """Right action on a basis label: ``(sign, label)``."""
        raise NotImplementedError

    def compose(self, mu, nus):
        raise NotImplementedError

    def unit(self):
        raise NotImplementedError

    def boundary(self, label):
        return {}

    def module(self, n, max_degree=0):
        basis = {d: self.labels(n, d) for d in range(max_degree + 1)}
        return DGModule.from_boundary(self.field, basis, lambda d, x: self.boundary(x), strict=True)

    def compose_elem(self, mu, nus):
        """Multilinear extension over sparse elements."""
        out = {}
        for m, c in mu.items():
            for combo in iproduct(*(list(n.items()) for n in nus)):
                coef = c
                for _, e in combo:
                    coef *= e
                for r, f in self.compose(m, [lab for lab, _ in combo]).items():
                    _add(out, r, coef * f)
        return out


class AssocOperad(Operad):
    name = "A"

    def __init__(self, bound=4, field=Q):
        self.bound = bound
        self.field = field

    def labels(self, n, d):
        return perms(n) if d == 0 else []

    def arity(self, label):
        return len(label)

    def act(self, label, s):
        return 1, act_word(label, s)

    def compose(self, mu, nus):
        return {substitute(mu, nus): 1}

    def unit(self):
        return (0,)


class CommOperad(Operad):
    name = "C"

    def __init__(self, bound=4, field=Q):
        self.bound = bound
        self.field = field

    def labels(self, n, d):
        return [("c", n)] if d == 0 else []

    def arity(self, label):
        return label[1]

    def act(self, label, s):
        return 1, label

    def compose(self, mu, nus):
        return {("c", sum(self.arity(v) for v in nus)): 1}

    def unit(self):
        return ("c", 1)


def assoc_operad(bound=4, field=Q):
    return AssocOperad(bound, field)


def comm_operad(bound=4, field=Q):
    return CommOperad(bound, field)


def _lattice_paths(dims):
    """Monotone lattice paths from 0 to ``dims`` with their shuffle signs.

    A path is the sequence of step directions; the sign is that of the
    permutation sorting the step positions by direction.
    """
    total = sum(dims)
    out = []

    def rec(k, free, chosen):
        if k == len(dims):
            seq = [0] * total
            order = []
            for c, pos in enumerate(chosen):
                for t in pos:
                    seq[t] = c
                order.extend(pos)
            sgn = 1
            for i in range(len(order)):
                for j in range(i + 1, len(order)):
                    if order[i] > order[j]:
                        sgn = -sgn
            out.append((tuple(seq), sgn))
            return
        for pos in combinations(free, dims[k]):
            rest = [t for t in free if t not in pos]
            chosen.append(pos)
            rec(k + 1, rest, chosen)
            chosen.pop()

    rec(0, list(range(total)), [])
    return out


class BarrattEccles(Operad):
    """Truncated Barratt-Eccles operad in arities ``<= arity_bound``."""

    name = "E"

    def __init__(self, arity_bound=4, degree_bound=4, field=Q):
        self.arity_bound = arity_bound
        self.degree_bound = degree_bound
        self.field = field
        self._paths = {}

    def labels(self, n, d):
        ps = perms(n)
        out = [(g,) for g in ps]
        for _ in range(d):
            out = [t + (g,) for t in out for g in ps if g != t[-1]]
        return out

    def coinvariant_labels(self, n, d):
        """Orbit representatives: tuples starting with the identity."""
        e = perm_identity(n)
        return [t for t in self.labels(n, d) if t[0] == e]

    def degree(self, n, label):
        return len(label) - 1

    def arity(self, label):
        return len(label[0])

    def act(self, label, s):
        return 1, tuple(act_word(g, s) for g in label)

    def boundary(self, label):
        out = {}
        d = len(label) - 1
        if d == 0:
            return out
        for i in range(d + 1):
            t = label[:i] + label[i + 1:]
            if 0 < i < d and t[i - 1] == t[i]:
                continue
            _add(out, t, -1 if i % 2 else 1)
        return out

    def unit(self):
        return ((0,),)

    def paths(self, dims):
        dims = tuple(dims)
        got = self._paths.get(dims)
        if got is None:
            got = _lattice_paths(dims)
            self._paths[dims] = got
        return got

    def compose(self, mu, nus):
        simplices = [mu] + list(nus)
        dims = [len(s) - 1 for s in simplices]
        out = {}
        for seq, sgn in self.paths(dims):
            idx = [0] * len(simplices)
            verts = [substitute(mu[0], [v[0] for v in nus])]
            ok = True
            for c in seq:
                idx[c] += 1
                g = substitute(mu[idx[0]], [v[i] for v, i in zip(nus, idx[1:])])
                if g == verts[-1]:
                    ok = False
                    break
                verts.append(g)
            if ok:
                _add(out, tuple(verts), sgn)
        return out

    def augmentation(self, label):
        """``E -> C``: degree-0 generators go to 1."""
        return {("c", self.arity(label)): 1} if len(label) == 1 else {}


def barratt_eccles(arity_bound=4, degree_bound=4, field=Q):
    return BarrattEccles(arity_bound, degree_bound, field)


def assoc_to_e(w):
    return {(w,): 1}


def assoc_to_comm(w):
    return {("c", len(w)): 1}


# ---------------------------------------------------------------------------
# verification


@dataclass
class OperadReport:
    failures: list = dc_field(default_factory=list)
    checked: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def note(self, key):
        self.checked[key] = self.checked.get(key, 0) + 1


def _koszul_permute(degrees, s_inv):
    """Sign of reordering items of ``degrees`` into ``[degrees[s_inv[i]] ...]``."""
    sgn = 1
    order = list(s_inv)
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j] and degrees[order[i]] % 2 and degrees[order[j]] % 2:
                sgn = -sgn
    return sgn


def _scale(elem, c):
    return {k: c * v for k, v in elem.items()} if c != 1 else elem


def _act_elem(o, elem, s):
    out = {}
    for lab, c in elem.items():
        sg, r = o.act(lab, s)
        _add(out, r, sg * c)
    return out


def _d_elem(o, elem):
    out = {}
    for lab, c in elem.items():
        for r, e in o.boundary(lab).items():
            _add(out, r, c * e)
    return out


def sample_labels(o, n, max_degree, limit, rng):
    pool = []
    for d in range(max_degree + 1):
        pool.extend(o.labels(n, d))
    if len(pool) <= limit:
        return pool
    return rng.sample(pool, limit)


def check_operad(o, max_arity=3, max_degree=2, per_slot=4, max_cases=400, seed=0, max_total_degree=4):
    """Unit, equivariance, associativity and differential compatibility.

    Cases are exhaustive while they fit in ``max_cases``; otherwise a seeded
    random sample is drawn, so results are reproducible.
    """
    rng = random.Random(seed)
    rep = OperadReport()
    deg = lambda lab: o.degree(o.arity(lab), lab)

    def fail(kind, *data):
        if len(rep.failures) < 50:
            rep.failures.append((kind,) + data)

    pools = {n: sample_labels(o, n, max_degree, per_slot, rng) for n in range(1, max_arity + 1)}
    unit = o.unit()

    # d^2 = 0 and action by chain maps
    for n in range(1, max_arity + 1):
        for lab in pools[n]:
            rep.note("dsquare")
            if _d_elem(o, o.boundary(lab)):
                fail("d^2 != 0", lab)
            for s in perms(n):
                rep.note("action-d")
                if _act_elem(o, o.boundary(lab), s) != _d_elem(o, _act_elem(o, {lab: 1}, s)):
                    fail("action does not commute with d", lab, s)
            for s, t in iproduct(perms(n), repeat=2):
                st = tuple(s[x] for x in t)  # s o t
                lhs = _act_elem(o, _act_elem(o, {lab: 1}, s), t)
                rhs = _act_elem(o, {lab: 1}, st)
                rep.note("right-action")
                if lhs != rhs:
                    fail("not a right action", lab, s, t)
                    break

    cases = []
    for n in range(1, max_arity + 1):
        for ks in iproduct(range(1, max_arity + 1), repeat=n):
            for mu in pools[n]:
                for nus in iproduct(*(pools[k] for k in ks)):
                    if deg(mu) + sum(deg(v) for v in nus) <= max_total_degree:
                        cases.append((mu, nus))
    if len(cases) > max_cases:
        cases = rng.sample(cases, max_cases)

    for mu, nus in cases:
        n = len(nus)
        ks = [o.arity(v) for v in nus]
        base = o.compose(mu, list(nus))
        # unit laws
        rep.note("unit")
        if o.compose(unit, [mu]) != {mu: 1} or o.compose(mu, [unit] * n) != {mu: 1}:
            fail("unit", mu)
        # differential is a derivation of gamma
        lhs = _d_elem(o, base)
        rhs = o.compose_elem(o.boundary(mu), [{v: 1} for v in nus])
        sgn = -1 if deg(mu) % 2 else 1
        for i, v in enumerate(nus):
            args = [{w: 1} for w in nus]
            args[i] = o.boundary(v)
            for r, c in o.compose_elem({mu: 1}, args).items():
                _add(rhs, r, sgn * c)
            if deg(v) % 2:
                sgn = -sgn
        rep.note("derivation")
        if lhs != rhs:
            fail("d(gamma) != gamma(d)", mu, nus)
        # equivariance in the top argument
        for s in perms(n):
            sg, mus = o.act(mu, s)
            lhs = _scale(o.compose(mus, list(nus)), sg)
            inv = perm_inverse(s)
            perm_nus = [nus[inv[i]] for i in range(n)]
            ksign = _koszul_permute([deg(v) for v in nus], inv)
            beta = block_permutation(s, ks)
            rhs = _scale(_act_elem(o, o.compose(mu, perm_nus), beta), ksign)
            rep.note("equivariance-top")
            if lhs != rhs:
                fail("equivariance (top)", mu, nus, s)
        # equivariance in the inputs
        taus = [rng.choice(perms(k)) for k in ks]
        acted, sg = [], 1
        for v, t in zip(nus, taus):
            si, w = o.act(v, t)
            sg *= si
            acted.append(w)
        lhs = _scale(o.compose(mu, acted), sg)
        rhs = _act_elem(o, base, block_sum(taus))
        rep.note("equivariance-inputs")
        if lhs != rhs:
            fail("equivariance (inputs)", mu, nus, taus)
        # associativity with a random third layer
        total = sum(ks)
        budget = max_total_degree - deg(mu) - sum(deg(v) for v in nus)
        xis = []
        for _ in range(total):
            choices = [x for x in pools[rng.randint(1, min(2, max_arity))] if deg(x) <= budget]
            x = rng.choice(choices)
            budget -= deg(x)
            xis.append(x)
        lhs = o.compose_elem(base, [{x: 1} for x in xis])
        inner, pos, sign = [], 0, 1
        for i, v in enumerate(nus):
            blk = xis[pos:pos + ks[i]]
            pos += ks[i]
            inner.append(o.compose(v, list(blk)))
            # xis of block i move left past nus[i+1:]
            later = sum(deg(w) for w in nus[i + 1:])
            if later % 2 and sum(deg(x) for x in blk) % 2:
                sign = -sign
        rhs = _scale(o.compose_elem({mu: 1}, inner), sign)
        rep.note("associativity")
        if lhs != rhs:
            fail("associativity", mu, nus, tuple(xis))
    return rep


def check_morphism(src, tgt, fmap, max_arity=3, max_degree=0, per_slot=4, seed=0):
    """Compatibility of a label map ``fmap(label) -> element`` with action and gamma."""
    rng = random.Random(seed)
    bad = []
    for n in range(1, max_arity + 1):
        pool = sample_labels(src, n, max_degree, per_slot, rng)
        for lab in pool:
            for s in perms(n):
                sg, r = src.act(lab, s)
                if _scale(fmap(r), sg) != _act_elem(tgt, fmap(lab), s):
                    bad.append(("action", lab, s))
            for ks in iproduct(range(1, max_arity + 1), repeat=n):
                nus = [rng.choice(sample_labels(src, k, max_degree, per_slot, rng)) for k in ks]
                lhs = {}
                for r, c in src.compose(lab, nus).items():
                    for t, e in fmap(r).items():
                        _add(lhs, t, c * e)
                rhs = tgt.compose_elem(fmap(lab), [fmap(v) for v in nus])
                if lhs != rhs:
                    bad.append(("composition", lab, tuple(nus)))
    return bad


# ---------------------------------------------------------------------------
# homology of E(n)


def e_dims(n, top):
    """``(dim E(n)_d, dim of coinvariants)`` for ``d = 0..top``."""
    f = factorial(n)
    return [(f * (f - 1) ** d, (f - 1) ** d) for d in range(top + 1)]


def e_homology_direct(n, top, field=Q):
    """Homology of ``E(n)`` in degrees ``0..top`` by rank computation."""
    from .dgmod import homology

    e = BarrattEccles(n, top + 1, field)
    m = e.module(n, top + 1)
    return homology(m, 0, top)


def _patterns(length, max_values):
    """Restricted growth strings of ``length`` with consecutive entries distinct
    from position 1 on, using at most ``max_values`` values.  Position 0 is
    the identity element, value 0."""
    out = []

    def rec(seq, top):
        if len(seq) == length:
            out.append(tuple(seq))
            return
        for v in range(min(top + 2, max_values)):
            if len(seq) >= 2 and v == seq[-1]:
                continue
            seq.append(v)
            rec(seq, max(top, v))
            seq.pop()

    rec([0], 0)
    return out


def _pattern_boundary(t):
    out = {}
    d = len(t) - 1
    if d == 0:
        return out
    for i in range(d + 1):
        u = t[:i] + t[i + 1:]
        if 0 < i < d and u[i - 1] == u[i]:
            continue
        _add(out, u, -1 if i % 2 else 1)
    return out


def _pattern_h(t, e):
    if t[0] == e:
        return {}
    return {(e,) + t: 1}


def homotopy_certificate(n, top):
    """Verify ``dh + hd = id - eta eps`` on ``E(n)`` in degrees ``0..top``.

    ``h(g_0, ..., g_d) = (e, g_0, ..., g_d)`` when ``g_0 != e`` and ``0``
    otherwise.  Both sides only test equalities among ``e, g_0, ..., g_d``,
    so it suffices to check one tuple per equality pattern; patterns are
    restricted growth strings with the identity first.  Also checks
    ``d^2 = 0`` on the same representatives.

    Returns ``(ok, patterns_checked)``.
    """
    f = factorial(n)
    checked = 0
    for d in range(top + 1):
        for pat in _patterns(d + 2, f):
            t = pat[1:]
            if any(t[i] == t[i + 1] for i in range(len(t) - 1)):
                continue
            checked += 1
            lhs = {}
            for r, c in _pattern_boundary(t).items():
                for s, e in _pattern_h(r, 0).items():
                    _add(lhs, s, c * e)
            for r, c in _pattern_h(t, 0).items():
                for s, e in _pattern_boundary(r).items():
                    _add(lhs, s, c * e)
            want = {t: 1}
            if d == 0:
                _add(want, (0,), -1)
            if lhs != want:
                return False, checked
            dd = {}
            for r, c in _pattern_boundary(t).items():
                for s, e in _pattern_boundary(r).items():
                    _add(dd, s, c * e)
            if dd:
                return False, checked
    return True, checked


def homotopy_check_literal(n, top):
    """The same identity checked on every basis tuple (small cases)."""
    e = BarrattEccles(n, top, Q)
    ident = perm_identity(n)
    for d in range(top + 1):
        for t in e.labels(n, d):
            lhs = {}
            for r, c in e.boundary(t).items():
                if r[0] != ident:
                    _add(lhs, (ident,) + r, c)
            if t[0] != ident:
                for r, c in e.boundary((ident,) + t).items():
                    _add(lhs, r, c)
            want = {t: 1}
            if d == 0:
                _add(want, (ident,), -1)
            if lhs != want:
                return False
    return True


def orbit_count(n, d):
    """``(number of orbits, all orbits free)`` of the diagonal action in degree ``d``."""
    e = BarrattEccles(n, d, Q)
    seen = set()
    orbits, free = 0, True
    group = perms(n)
    for t in e.labels(n, d):
        if t in seen:
            continue
        orbits += 1
        orb = {e.act(t, s)[1] for s in group}
        if len(orb) != len(group):
            free = False
        seen |= orb
    return orbits, free
