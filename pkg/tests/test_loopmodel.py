import pytest

from ophh.dgmod import verify_dsquare
from ophh.errors import NotSimplyConnectedProxy, SizeLimitExceeded
from ophh.exactlin import Field, Q
from ophh.hochschild import Bounds, hh
from ophh.loopmodel import (coface, codegeneracy, cototal, cototal_via_quotient, h1_proxy, jones_model,
                            loop_betti, moore_simplices)
from ophh.oalg import FreeAlgebra, GeneratorSpace
from ophh.sset import boundary_simplex, collapse, point, simplex, torus

SPHERE_MODEL = FreeAlgebra(GeneratorSpace(["x", "y"], [-2, -3], {1: {(0, 0): 1}}))


def test_point_model():
    j = jones_model(point(), 3)
    for n in range(4):
        assert j.level(n).count(0) == 1
        assert j.level(n).count(1) == 0
    assert j.check_identities(2) == []
    c = cototal(j, Q, 3, (-4, 1))
    assert c.betti() == {0: 1, 1: 0, 2: 0, 3: 0}
    assert {m: d for m, (d, _) in loop_betti(point(), Q, 3, 3).items()} == {0: 1, 1: 0, 2: 0, 3: 0}


def test_wraparound_coface():
    x = simplex(1)
    v0, v1 = x.simplices(0)
    assert coface(1, 2, (v0, v1)) == (v0, v1, v0)
    assert coface(1, 0, (v0, v1)) == (v0, v0, v1)
    assert coface(1, 1, (v0, v1)) == (v0, v1, v1)
    assert codegeneracy(1, 0, (v0, v1, v0)) == (v0, v0)


def test_cosimplicial_identities_on_sphere():
    j = jones_model(boundary_simplex(3), 4)
    assert j.check_identities(1, levels=3) == []
    assert jones_model(torus(), 2).check_identities(1) == []


def test_moore_subcomplex():
    y = collapse(boundary_simplex(3))
    for s in moore_simplices(y, 2, 2):
        assert s[1] != s[2] and s[2] != s[0]
    assert moore_simplices(point(), 2, 0) == []
    assert len(moore_simplices(point(), 0, 0)) == 1


def test_cototal_dsquare_and_routes_agree():
    y = collapse(boundary_simplex(3))
    for P in (1, 2, 3):
        c = cototal(jones_model(y, P), Q, P, (-3, 1), check=False)
        assert verify_dsquare(c.module).ok
    b = cototal(jones_model(y, 2), Q, 2, (-3, 1)).betti()
    assert b == cototal_via_quotient(y, Q, 2, (-3, 1))
    assert cototal(jones_model(y, 2), Field(3), 2, (-3, 1)).betti() == b


def test_collapse_does_not_change_low_degrees():
    x = boundary_simplex(3)
    direct = cototal(jones_model(x, 2), Q, 2, (-2, 1)).betti()
    small = cototal(jones_model(collapse(x), 2), Q, 2, (-2, 1)).betti()
    assert direct == small == {0: 1, 1: 1}


def test_sphere_betti_match_model():
    res = loop_betti(boundary_simplex(3), Q, 2, 2)
    oracle = hh(SPHERE_MODEL, Bounds(6, None, (-4, 1)))
    assert [res[m][0] for m in range(3)] == [1, 1, 1]
    for m, (d, stable) in res.items():
        if stable:
            assert d == oracle[-m][0]


def test_unstable_flag_above_range():
    res = loop_betti(boundary_simplex(3), Q, 2, 3)
    assert res[3][1] is False
    assert all(res[m][1] for m in range(3))


def test_torus_rejected():
    assert h1_proxy(torus(), Q) == 2
    with pytest.raises(NotSimplyConnectedProxy):
        loop_betti(torus(), Q, 2, 1)


def test_size_cap():
    with pytest.raises(SizeLimitExceeded):
        cototal(jones_model(boundary_simplex(3), 3, cap=100), Q, 3, (-3, 1))
