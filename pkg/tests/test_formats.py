import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ophh.errors import ParseError
from ophh.exactlin import Field
from ophh.formats import parse_algebra, parse_expression, read_algebra

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "src", "ophh", "data")


def test_sphere_file():
    spec = read_algebra(os.path.join(DATA, "sphere.alg"))
    A = spec.algebra
    assert spec.cohomological
    assert list(A.V.names) == ["x", "y"]
    assert list(A.V.degrees) == [-2, -3]
    assert A.d_mono((1,)) == {(0, 0): 1}
    assert spec.options == {"max_weight": 4}
    assert spec.display_degree(-3) == 3


def test_field_override_and_flavor():
    spec = parse_algebra("field: Q\nflavor: A\ngenerators: a 1, b 3\nd b = a*a\n", field=Field(5))
    assert spec.algebra.field == Field(5)
    assert spec.algebra.flavor == "A"
    assert spec.algebra.d_mono((1,)) == {(0, 0): 1}


def test_expressions():
    idx = {"x": 0, "y": 1}
    got = parse_expression("x^2 - 3*x*y + 1/2*y", idx)
    assert got == {(0, 0): 1, (0, 1): -3, (1,): Fraction(1, 2)}
    assert parse_expression("x - x", idx) == {}


def test_commutative_reordering_sign():
    spec = parse_algebra("generators: a 1, b 1, c 3\nd c = b*a\n")
    assert spec.algebra.d_mono((2,)) == {(0, 1): -1}


@pytest.mark.parametrize("text,line,col", [
    ("generators: x 2\nd x = 3 * * x\n", 2, 11),
    ("generators: x 2\nrelations: x^2, 2, x*q\n", 2, 17),
    ("generators: x 2\nrelations: x^2, x*q\n", 2, 19),
    ("generators: x 2\nd z = x\n", 2, 3),
    ("generators: x 2\nwhatever: 1\n", 2, 1),
    ("generators: x two\n", 1, 15),
    ("field: F4\n", 1, 8),
    ("generators: x 2\nd x = y\n", 2, 7),
    ("generators: x 2, x 3\n", 1, 18),
    ("flavor: B\n", 1, 9),
    ("generators: x 2\nthis line is junk\n", 2, 1),
])
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_algebra(text)
    assert exc.value.line == line
    assert exc.value.column == col


def test_wrong_degree_differential():
    with pytest.raises(ParseError) as exc:
        parse_algebra("generators: u 1, v 3\nd v = u\n")
    assert exc.value.line == 2


names = st.lists(st.from_regex(r"[a-z][a-z0-9]{0,3}", fullmatch=True), min_size=1, max_size=4, unique=True)


@settings(max_examples=50, deadline=None)
@given(names, st.data())
def test_generator_lists_round_trip(gens, data):
    degs = [data.draw(st.integers(0, 6)) for _ in gens]
    text = "generators: " + ", ".join(f"{g} {d}" for g, d in zip(gens, degs)) + "\nmax_weight: 2\n"
    spec = parse_algebra(text)
    assert list(spec.algebra.V.names) == gens
    assert list(spec.algebra.V.degrees) == degs
    coh = parse_algebra(text.replace("generators", "grading: cohomological\ngenerators"))
    assert list(coh.algebra.V.degrees) == [-d for d in degs]
