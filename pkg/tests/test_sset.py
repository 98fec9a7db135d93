import pytest
from hypothesis import given, settings, strategies as st

from ophh.dgmod import homology, verify_dsquare
from ophh.errors import ParseError, SizeLimitExceeded
from ophh.exactlin import Field, Q
from ophh.sset import (SimplicialComplex, boundary_simplex, circle, circle_element, circle_index, collapse,
                       homology_dims, normalized_chains, normalized_cochains, parse_facets, point, product,
                       simplex, torus)


def test_circle_levels():
    k = circle()
    for n in range(7):
        elems = k.simplices(n)
        assert len(elems) == n + 1
        assert sorted(circle_index(s) for s in elems) == list(range(n + 1))
    assert k.counts(4) == [1, 1, 0, 0, 0]


def test_circle_structure_maps():
    # d_i and s_j on Z/(n+1), with the wraparound d_n
    k = circle()
    for n in range(1, 6):
        for c in range(n + 1):
            s = circle_element(n, c)
            for i in range(n + 1):
                got = circle_index(k.face(n, i, s))
                if i < n:
                    want = c if c <= i else c - 1
                else:
                    want = c % n
                assert got == want, (n, c, i)
            for j in range(n + 1):
                got = circle_index(k.degen(n, j, s))
                assert got == (c if c <= j else c + 1)


def test_simplicial_identities_hold():
    for x in (circle(), boundary_simplex(3), simplex(2), torus()):
        assert x.check_identities(3) == []


def test_chains_of_sphere():
    x = boundary_simplex(3)
    c = normalized_chains(x, Q, 3)
    assert c.dims() == {0: 4, 1: 6, 2: 4}
    h = homology(c, 0, 2)
    assert h == {0: 1, 1: 0, 2: 1}


def test_point_and_circle_chains():
    assert homology(normalized_chains(point(), Q, 2), 0, 1) == {0: 1, 1: 0}
    assert homology(normalized_chains(circle(), Q, 2), 0, 1) == {0: 1, 1: 1}
    assert homology(normalized_cochains(point(), Q, 2), -1, 0)[0] == 1
    h = homology(normalized_cochains(circle(), Q, 2))
    assert h.get(0) == 1 and h.get(-1) == 1


def test_torus_homology():
    assert homology_dims(torus(), Q, 3) == {0: 1, 1: 2, 2: 1}
    assert homology_dims(torus(), Field(2), 3) == {0: 1, 1: 2, 2: 1}


def test_product_counts():
    sq = product(simplex(1), simplex(1))
    assert [sq.count(n) for n in range(4)] == [4, 5, 2, 0]
    with_point = product(boundary_simplex(2), point())
    assert [with_point.count(n) for n in range(3)] == boundary_simplex(2).counts(2)
    assert sq.check_identities(2) == []


def test_product_cap():
    big = product(torus(), torus(), torus(), cap=50)
    with pytest.raises(SizeLimitExceeded):
        big.nondegenerate(2)


def test_collapse_keeps_homology():
    for x in (boundary_simplex(3), torus(), boundary_simplex(2)):
        y = collapse(x)
        assert homology_dims(y, Q, 3) == homology_dims(x, Q, 3)
    y = collapse(boundary_simplex(3))
    assert y.counts(3)[0] == 1


def test_parse_facets():
    x = parse_facets("# comment\n0 1 2\n1, 2, 3\n\n")
    assert x.counts(2) == [4, 5, 2]
    named = parse_facets("a b\nb c\n")
    assert named.counts(1) == [3, 2]
    for bad, line in (("0 1\n0 0\n", 2), ("0 x-y\n", 1), ("", 1)):
        with pytest.raises(ParseError) as exc:
            parse_facets(bad)
        assert exc.value.line == line


facet_lists = st.lists(st.sets(st.integers(0, 5), min_size=1, max_size=4), min_size=1, max_size=6)


@settings(max_examples=40, deadline=None)
@given(facet_lists)
def test_euler_characteristic(facets):
    x = SimplicialComplex([tuple(f) for f in facets])
    c = normalized_chains(x, Q, 4)
    assert verify_dsquare(c).ok
    h = homology(c, 0, 3)
    assert sum((-1) ** n * v for n, v in h.items()) == x.euler_characteristic(3)
    assert x.check_identities(2) == []
