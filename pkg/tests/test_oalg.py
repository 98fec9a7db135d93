import pytest
from hypothesis import given, settings, strategies as st

from ophh.exactlin import Field, Q
from ophh.oalg import ASSOC, COMM, FreeAlgebra, GeneratorSpace, coproduct, cyclic, folding, inclusions


def alg(names, degrees, d=None, flavor=COMM, **kw):
    return FreeAlgebra(GeneratorSpace(names, degrees, d or {}), flavor, **kw)


SPHERE = alg(["x", "y"], [-2, -3], {1: {(0, 0): 1}})
WORDS = alg(["a", "b"], [1, 3], {1: {(0, 0): 1}}, ASSOC)


def test_free_bases():
    x2 = alg(["x"], [2], max_weight=3)
    mons = x2.monomials()
    assert mons == [(), (0,), (0, 0), (0, 0, 0)]
    assert [x2.mono_degree(m) for m in mons] == [0, 2, 4, 6]
    assert alg(["x"], [3]).monomials(hi=30) == [(), (0,)]
    w = alg(["x", "y"], [1, 1], flavor=ASSOC, max_weight=2)
    assert len(w.monomials()) == 7


def test_products_and_signs():
    x3 = alg(["x"], [3])
    assert x3.mul({(0,): 1}, {(0,): 1}) == {}
    xy = alg(["x", "y"], [1, 1])
    assert xy.mul({(1,): 1}, {(0,): 1}) == {(0, 1): -1}
    xyz = alg(["x", "y", "z"], [0, 0, 0], flavor=ASSOC, max_weight=3)
    assert xyz.mul({(0, 1): 1}, {(2,): 1}) == {(0, 1, 2): 1}


def test_characteristic_two_keeps_odd_squares():
    x = alg(["x"], [1], field=Field(2), max_weight=3)
    assert x.mul({(0,): 1}, {(0,): 1}) == {(0, 0): 1}


def test_differentials():
    closed = alg(["x", "y"], [2, 3])
    assert all(not closed.d_mono(m) for m in closed.monomials(hi=8))
    # d(xy) = x^3
    assert SPHERE.d_mono((0, 1)) == {(0, 0, 0): 1}
    with pytest.raises(ValueError):
        alg(["u", "v"], [1, 3], {1: {(0,): 1}})
    with pytest.raises(ValueError):
        alg(["u"], [1], {0: {(): 1}})


def test_coproduct():
    x2 = alg(["x"], [2])
    triv = alg([], [])
    assert coproduct(x2, triv).monomials(hi=6) == x2.monomials(hi=6)
    two = coproduct(x2, x2)
    assert len([m for m in two.monomials(hi=4) if two.mono_degree(m) == 4]) == 3
    w = alg(["x"], [1], flavor=ASSOC)
    ww = coproduct(w, w)
    assert len([m for m in ww.monomials(hi=2) if len(m) == 2]) == 4


def test_folding_and_inclusions():
    x2 = alg(["x"], [2])
    two, fold = folding(x2)
    assert fold.apply_mono((0,)) == {(0,): 1}
    assert fold.apply_mono((1,)) == {(0,): 1}
    assert fold.apply_mono((0, 1)) == {(0, 0): 1}
    _, l, r = inclusions(SPHERE)
    two, fold = folding(SPHERE)
    for g in range(2):
        assert fold.apply(l.apply_mono((g,))) == {(g,): 1}
        assert fold.apply(r.apply_mono((g,))) == {(g,): 1}
    mons = [m for m in two.monomials(lo=-9) if len(m) <= 3]
    assert fold.commutes_with_d(mons) == []
    assert l.commutes_with_d(SPHERE.monomials(lo=-9)) == []
    assert r.commutes_with_d(SPHERE.monomials(lo=-9)) == []


def test_cyclic_order():
    p, tau = cyclic(SPHERE, 1)
    assert all(tau.apply_mono(m) == {m: 1} for m in p.monomials(lo=-6))
    p, tau = cyclic(alg(["x"], [2]), 2)
    assert tau.apply_mono((0,)) == {(1,): 1}
    for A in (SPHERE, WORDS):
        for n in (2, 3, 4):
            p, tau = cyclic(A, n)
            lo = -7 if A is SPHERE else None
            mons = p.monomials(lo=lo, max_weight=3) if lo else p.monomials(hi=7, max_weight=3)
            for m in mons:
                x = {m: 1}
                for _ in range(n):
                    x = tau.apply(x)
                assert x == {m: 1}
            assert tau.commutes_with_d(mons) == []


def graded_comm_count(degrees, n):
    """Hilbert series coefficient of S(V) in degree n, by generating function."""
    series = [1] + [0] * n
    for dg in degrees:
        new = [0] * (n + 1)
        if dg % 2:
            for i in range(n + 1):
                new[i] += series[i]
                if i + dg <= n:
                    new[i + dg] += series[i]
        else:
            for i in range(n + 1):
                k = 0
                while i + k * dg <= n:
                    new[i + k * dg] += series[i]
                    k += 1
        series = new
    return series[n]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.integers(0, 9))
def test_hilbert_series(degrees, n):
    A = alg([f"g{i}" for i in range(len(degrees))], degrees)
    got = len([m for m in A.monomials(hi=n) if A.mono_degree(m) == n])
    assert got == graded_comm_count(degrees, n)


def words(A, lo, hi, top):
    mons = [m for m in A.monomials(lo=lo, hi=hi) if len(m) <= top]
    return st.sampled_from(mons)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_leibniz_and_associativity(data):
    for A, lo, hi in ((SPHERE, -10, 0), (WORDS, 0, 8)):
        a = data.draw(words(A, lo, hi, 2))
        b = data.draw(words(A, lo, hi, 2))
        c = data.draw(words(A, lo, hi, 1))
        assert A.leibniz_defects([(a, b)]) == []
        ab_c = A.mul(A.mul({a: 1}, {b: 1}), {c: 1})
        a_bc = A.mul({a: 1}, A.mul({b: 1}, {c: 1}))
        assert ab_c == a_bc
        assert A.d(A.d_mono(a)) == {}


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_graded_commutativity(data):
    A = alg(["u", "v", "w"], [1, 2, 3])
    a = data.draw(words(A, 0, 8, 2))
    b = data.draw(words(A, 0, 8, 2))
    sign = -1 if (A.mono_degree(a) * A.mono_degree(b)) % 2 else 1
    ab = A.mul({a: 1}, {b: 1})
    ba = A.mul({b: 1}, {a: 1})
    assert ab == {m: sign * c for m, c in ba.items()}
