"""Invariant suite behind ``ophh selftest``.

Every check runs at small default bounds and reports ``(name, ok, detail)``.
Details hold only counts and dimensions, never timings, so two runs give
identical reports.
"""
from __future__ import annotations

import random

from .dgmod import homology, verify_dsquare
from .errors import OphhError
from .exactlin import BACKEND, Field, Q, SparseMatrix, rank


def _algebras():
    from .oalg import ASSOC, FreeAlgebra, GeneratorSpace

    return {
        "eps": FreeAlgebra(GeneratorSpace(["e"], [0]), relations=[(0, 0)], name="eps"),
        "ext1": FreeAlgebra(GeneratorSpace(["x"], [1]), name="ext1"),
        "x2": FreeAlgebra(GeneratorSpace(["x"], [2]), name="x2"),
        "sphere": FreeAlgebra(GeneratorSpace(["x", "y"], [-2, -3], {1: {(0, 0): 1}}), name="sphere"),
        "word": FreeAlgebra(GeneratorSpace(["a", "b"], [1, 3], {1: {(0, 0): 1}}), ASSOC, name="word"),
    }


def check_ranks():
    rng = random.Random(7)
    n = 0
    for _ in range(30):
        r, c = rng.randint(1, 9), rng.randint(1, 9)
        ent = {(i, j): rng.randint(-3, 3) for i in range(r) for j in range(c) if rng.random() < 0.5}
        for fld in (Q, Field(5)):
            m = SparseMatrix.from_entries(fld, r, c, [(i, j, v) for (i, j), v in ent.items()])
            if rank(m) != rank(m, backend="python"):
                return False, f"mismatch on case {n}"
            n += 1
    return True, f"cases={n} backend={BACKEND}"


def check_simplicial_identities():
    from .hochschild import Bounds, cyclic_simplicial
    from .simplicial import SimplicialDGModule, check_simplicial_identities
    from .sset import boundary_simplex, circle

    algs = _algebras()
    cases = [
        (SimplicialDGModule.from_sets(Q, circle()), 3),
        (SimplicialDGModule.from_sets(Q, boundary_simplex(3)), 2),
        (cyclic_simplicial(algs["x2"], Bounds(3, 3)), 2),
        (cyclic_simplicial(algs["sphere"], Bounds(3, 3)), 2),
    ]
    n = 0
    for s, P in cases:
        rep = check_simplicial_identities(s, P)
        if not rep.ok:
            return False, f"{s.name}: {rep.failures[0][0]}"
        n += rep.checked
    return True, f"labels={n}"


def check_tot_vs_normalized():
    from .hochschild import Bounds, cyclic_simplicial
    from .simplicial import SimplicialDGModule, normalize, tot
    from .sset import boundary_simplex, circle, torus

    algs = _algebras()
    cases = [
        (SimplicialDGModule.from_sets(Q, circle()), 4),
        (SimplicialDGModule.from_sets(Q, boundary_simplex(3)), 4),
        (SimplicialDGModule.from_sets(Q, torus()), 3),
        (cyclic_simplicial(algs["x2"], Bounds(3, 3)), 3),
        (cyclic_simplicial(algs["ext1"], Bounds(3, 3)), 3),
    ]
    for s, P in cases:
        t = tot(s, P)
        nm, _ = normalize(s, P, t=t)
        ht, hn = homology(t, 0, P - 1), homology(nm, 0, P - 1)
        if ht != hn:
            return False, f"{s.name}: {ht} vs {hn}"
    return True, f"modules={len(cases)}"


def check_shuffle():
    from .simplicial import SimplicialDGModule, shuffle
    from .sset import boundary_simplex, circle

    a = SimplicialDGModule.from_sets(Q, circle())
    b = SimplicialDGModule.from_sets(Q, boundary_simplex(2))
    f = shuffle(a, b, 3)
    bad = f.commutation_defects()
    return not bad, f"defects={len(bad)}"


def check_operads():
    from .operads import (assoc_operad, assoc_to_comm, assoc_to_e, barratt_eccles, check_morphism,
                          check_operad, comm_operad)

    out = []
    for o in (assoc_operad(), comm_operad(), barratt_eccles(3, 3)):
        rep = check_operad(o, max_arity=3, max_degree=2)
        if not rep.ok:
            return False, f"{o.name}: {rep.failures[0]}"
        out.append(f"{o.name}={sum(rep.checked.values())}")
    for src, tgt, f in ((assoc_operad(), barratt_eccles(3, 2), assoc_to_e),
                        (assoc_operad(), comm_operad(), assoc_to_comm)):
        if check_morphism(src, tgt, f):
            return False, f"morphism {src.name}->{tgt.name}"
    return True, " ".join(out)


def check_bar_acyclic():
    from .operads import e_homology_direct, homotopy_certificate, orbit_count

    total = 0
    for n in (2, 3, 4):
        ok, cnt = homotopy_certificate(n, 8)
        if not ok:
            return False, f"E({n}) certificate"
        total += cnt
    h = e_homology_direct(3, 3)
    if h != {0: 1, 1: 0, 2: 0, 3: 0}:
        return False, f"E(3) direct {h}"
    for n, d in ((3, 2), (4, 1)):
        orbits, free = orbit_count(n, d)
        if not free:
            return False, f"E({n}) degree {d} not free"
    return True, f"patterns={total}"


def check_algebras():
    algs = _algebras()
    n = 0
    for A in algs.values():
        mons = A.monomials(max_weight=3) if A.name != "sphere" else A.monomials(lo=-9)
        mons = [m for m in mons if len(m) <= 3]
        for m in mons:
            if A.d(A.d_mono(m)):
                return False, f"{A.name}: d^2 on {A.show(m)}"
        pairs = [(a, b) for a in mons for b in mons if len(a) + len(b) <= 3]
        bad = A.leibniz_defects(pairs)
        if bad:
            return False, f"{A.name}: Leibniz on {bad[0]}"
        n += len(pairs)
    return True, f"pairs={n}"


def check_classical(cyclic_sign=1):
    from .hochschild import Bounds, classical_complex

    algs = _algebras()
    cases = [("eps", Bounds(5)), ("ext1", Bounds(5, window=(-1, 6))), ("x2", Bounds(4, 6)),
             ("sphere", Bounds(3, 4)), ("word", Bounds(3, 4))]
    for name, b in cases:
        c = classical_complex(algs[name], b, check=False, cyclic_sign=cyclic_sign)
        rep = verify_dsquare(c)
        if not rep.ok:
            return False, f"{name}: d^2 != 0 in degree {rep.violations[0][0] + 1}"
    h = homology(classical_complex(algs["eps"], Bounds(5)), 0, 4)
    if [h[n] for n in range(5)] != [2, 1, 1, 1, 1]:
        return False, f"HH(eps) = {h}"
    h = homology(classical_complex(algs["ext1"], Bounds(5, window=(-1, 6))), 0, 5)
    if any(v != 1 for v in h.values()):
        return False, f"HH(ext1) = {h}"
    return True, f"complexes={len(cases)}"


def check_shuffle_product():
    from .hochschild import Bounds, classical_labels, shuffle_leibniz_defects

    algs = _algebras()
    rng = random.Random(3)
    n = 0
    for name in ("x2", "sphere", "ext1"):
        A = algs[name]
        labs = [l for ls in sorted(classical_labels(A, Bounds(3, 3)).items()) for l in ls[1]]
        pairs = [(rng.choice(labs), rng.choice(labs)) for _ in range(60)]
        bad = shuffle_leibniz_defects(A, pairs)
        if bad:
            return False, f"{name}: {bad[0]}"
        n += len(pairs)
    return True, f"pairs={n}"


def check_unreduced():
    from .hochschild import Bounds, classical_complex, comparison_map, unreduced_complex

    algs = _algebras()
    for name, b in (("eps", Bounds(4)), ("x2", Bounds(3, 5)), ("sphere", Bounds(3, 4))):
        A = algs[name]
        nu, _, _ = unreduced_complex(A, b)
        cl = classical_complex(A, b)
        f = comparison_map(A, nu, cl)
        if f.commutation_defects():
            return False, f"{name}: comparison is not a chain map"
        if homology(nu) != homology(cl):
            return False, f"{name}: homology differs"
    return True, "algebras=3"


def check_operadic():
    from .hochschild import Bounds, operadic_hc, positive_to_normalized, splitting, theoremA_compare

    algs = _algebras()
    out = []
    for name, b in (("x2", Bounds(3, 4)), ("sphere", Bounds(2, 3))):
        A = algs[name]
        c = operadic_hc(A, b)
        bij = positive_to_normalized(c)
        if not bij.ok:
            return False, f"{name}: bijection"
        splitting(c)
        r = theoremA_compare(A, b)
        if not r.ok:
            return False, f"{name}: comparison"
        out.append(f"{name}:stable={sum(1 for v in r.agree.values() if v)}")
    return True, " ".join(out)


def check_loop():
    from .hochschild import Bounds, hh
    from .loopmodel import cototal, cototal_via_quotient, jones_model
    from .sset import boundary_simplex, collapse, point

    y = collapse(boundary_simplex(3))
    if jones_model(y, 3).check_identities(2):
        return False, "cosimplicial identities"
    b = cototal(jones_model(y, 2), Q, 2, (-3, 1)).betti()
    b2 = cototal_via_quotient(y, Q, 2, (-3, 1))
    if b != b2:
        return False, f"Moore {b} vs quotient {b2}"
    orc = hh(_algebras()["sphere"], Bounds(6, None, (-3, 1)))
    for m in (0, 1):
        if b[m] != orc[-m][0]:
            return False, f"degree {m}: {b[m]} vs {orc[-m][0]}"
    if cototal(jones_model(point(), 2), Q, 2, (-3, 1)).betti() != {0: 1, 1: 0, 2: 0}:
        return False, "point"
    return True, "betti=" + ",".join(str(b[m]) for m in sorted(b))


CHECKS = [
    ("exact ranks: compiled and python backends agree", check_ranks),
    ("simplicial identities", check_simplicial_identities),
    ("Tot and N have equal homology", check_tot_vs_normalized),
    ("shuffle map is a chain map", check_shuffle),
    ("operad axioms and morphisms", check_operads),
    ("E(n) acyclic and free", check_bar_acyclic),
    ("algebra d^2 and Leibniz", check_algebras),
    ("classical complexes: d^2 = 0 and oracles", check_classical),
    ("shuffle product Leibniz rule", check_shuffle_product),
    ("unreduced comparison", check_unreduced),
    ("operadic complex: bijection, splitting, comparison", check_operadic),
    ("loop space model", check_loop),
]


def run(faults=()):
    results = []
    for name, fn in CHECKS:
        kw = {}
        if fn is check_classical and "cyclic-sign" in faults:
            kw["cyclic_sign"] = -1
        try:
            ok, detail = fn(**kw)
        except (OphhError, ArithmeticError, KeyError, ValueError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results
