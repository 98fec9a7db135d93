import pytest
from hypothesis import given, settings, strategies as st

from ophh.dgmod import ChainMap, DGModule, ground, homology, induced_rank, suspend, tensor, verify_dsquare
from ophh.exactlin import Q, SparseMatrix
from ophh.sset import circle, normalized_chains


def two_term(field=Q, a="a", b="b", deg=1):
    """``a -> b`` with d a = b, acyclic."""
    return DGModule.from_boundary(field, {deg: [a], deg - 1: [b]}, lambda n, x: {b: 1} if x == a else {})


def test_zero_differential():
    m = DGModule(Q, {0: ["p", "q"], 3: ["r"]})
    assert verify_dsquare(m).ok
    assert homology(m) == {0: 2, 1: 0, 2: 0, 3: 1}


def test_identity_two_term():
    m = two_term()
    assert verify_dsquare(m).ok
    assert homology(m) == {0: 0, 1: 0}


def test_corrupted_differential_is_flagged():
    basis = {2: ["x"], 1: ["y"], 0: ["z"]}
    diffs = {2: SparseMatrix.identity(Q, 1), 1: SparseMatrix.identity(Q, 1)}
    rep = verify_dsquare(DGModule(Q, basis, diffs))
    assert not rep.ok
    assert len(rep.violations) == 1


def test_tensor_unit():
    b = two_term()
    t = tensor(ground(Q), b)
    assert t.dims() == b.dims()
    assert homology(t) == homology(b)


def test_tensor_koszul_sign():
    a = DGModule.from_boundary(Q, {1: ["x"], 0: ["u"]}, lambda n, l: {"u": 1} if l == "x" else {})
    b = DGModule.from_boundary(Q, {1: ["y"], 0: ["v"]}, lambda n, l: {"v": 1} if l == "y" else {})
    t = tensor(a, b)
    assert t.apply_d(2, {("x", "y"): 1}) == {("u", "y"): 1, ("x", "v"): -1}


def test_tensor_of_acyclics_is_acyclic():
    t = tensor(two_term(a="a", b="b"), two_term(a="c", b="d", deg=3))
    assert verify_dsquare(t).ok
    assert all(v == 0 for v in homology(t).values())


def test_circle_chains():
    assert homology(normalized_chains(circle(), Q, 3)) == {0: 1, 1: 1}


def test_suspend():
    m = DGModule(Q, {2: ["x"]})
    assert suspend(m, 0).dims() == m.dims()
    assert suspend(m, 1).dims() == {3: 1}
    s = suspend(two_term(), 1)
    assert s.d(2).to_dense() == [[-1]]


def test_chain_map_checks():
    a = two_term()
    f = ChainMap.from_function(a, a, lambda n, x: {x: 2})
    assert f.is_chain_map()
    g = ChainMap.from_function(a, a, lambda n, x: {x: 1} if x == "a" else {})
    assert not g.is_chain_map()
    c = DGModule(Q, {0: ["p"]})
    assert induced_rank(ChainMap.from_function(c, c, lambda n, x: {x: 3}), 0) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=4), st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_kunneth_for_zero_differentials(da, db):
    a = DGModule(Q, {n: [f"a{n}_{i}" for i in range(k)] for n, k in enumerate(da) if k})
    b = DGModule(Q, {n: [f"b{n}_{i}" for i in range(k)] for n, k in enumerate(db) if k})
    ha, hb = homology(a), homology(b)
    ht = homology(tensor(a, b))
    for n, v in ht.items():
        assert v == sum(ha.get(i, 0) * hb.get(n - i, 0) for i in range(n + 1))


def test_from_boundary_strict():
    with pytest.raises(KeyError):
        DGModule.from_boundary(Q, {1: ["a"], 0: ["b"]}, lambda n, x: {"zz": 1})
