import random

import pytest
from hypothesis import given, strategies as st

from bettikit.monomial import (
    IdealError,
    MonomialIdeal,
    divides,
    format_monomial,
    in_degree_support,
    join,
    minimalize,
    parse_ideal,
)

vec3 = st.tuples(*[st.integers(0, 4)] * 3)


def test_parse_json_drops_divisible_generator():
    I = parse_ideal('{"variables":["x","y"],"generators":[[1,0],[1,1]]}')
    assert I.generators == ((1, 0),)
    assert I.variables == ("x", "y")


def test_parse_four_generator_ideal():
    I = parse_ideal("a*c, a*e, b*d, d*e")
    assert I.variables == tuple("abcde")
    assert set(I.generators) == {(1, 0, 1, 0, 0), (1, 0, 0, 0, 1), (0, 1, 0, 1, 0), (0, 0, 0, 1, 1)}


def test_parse_powers_already_minimal():
    I = parse_ideal("x^2, x*y, y^2")
    assert set(I.generators) == {(2, 0), (1, 1), (0, 2)}


@pytest.mark.parametrize("text", ["ac, ae, bd, de", "a*c,a*e,b*d,d*e", "(ac, ae, bd, de)", "c*a, e a, bd, ed"])
def test_juxtaposition_and_spacing(text):
    assert parse_ideal(text) == parse_ideal("a*c, a*e, b*d, d*e")


def test_declared_multichar_variables():
    I = parse_ideal("x1x2, x2^3, x10", ["x1", "x2", "x10"])
    assert set(I.generators) == {(1, 1, 0), (0, 3, 0), (0, 0, 1)}
    I2 = parse_ideal("variables: xy z\nxy*z, xy^2")
    assert I2.variables == ("xy", "z")
    assert set(I2.generators) == {(1, 1), (2, 0)}


@pytest.mark.parametrize(
    "text, variables",
    [
        ("a*q", ["a", "b"]),
        ("", None),
        ("1", None),
        ("x, 1", None),
        ("a$b", None),
        ('{"generators": [[1, -1]]}', None),
        ('{"generators": [[0, 0]]}', None),
        ('{"generators": []}', None),
        ('{"generators": [[1, 0], [1]]}', None),
        ('{"generators": [[1, 0]', None),
    ],
)
def test_parse_errors(text, variables):
    with pytest.raises(IdealError):
        parse_ideal(text, variables)


def test_constructor_rejects_nonminimal_and_unit():
    with pytest.raises(IdealError):
        MonomialIdeal(2, ((1, 0), (1, 1)))
    with pytest.raises(IdealError):
        MonomialIdeal(2, ((0, 0),))


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, 0, 1), (1, 1, 0), (1, 1, 1)), ((2, 0), (1, 1), (2, 1)), ((3, 1), (3, 1), (3, 1))],
)
def test_join(a, b, expected):
    assert join(a, b) == expected


def test_divides():
    assert divides((1, 0), (1, 1))
    assert not divides((2, 0), (1, 1))
    assert divides((2, 5), (2, 5))
    with pytest.raises(ValueError):
        divides((1,), (1, 1))
    with pytest.raises(ValueError):
        join((1,), (1, 1))


def test_in_degree_support():
    I = parse_ideal("x, y")
    assert not in_degree_support(I, (0, 0))
    assert in_degree_support(I, (1, 3))
    P = parse_ideal("ac, ae, bd, de")
    assert in_degree_support(P, (1, 1, 1, 1, 1))
    with pytest.raises(ValueError):
        in_degree_support(I, (1, 1, 1))


def test_format_monomial():
    assert format_monomial((1, 0, 2), "xyz") == "xz^2"
    assert format_monomial((1, 1), ["x1", "x2"]) == "x1*x2"
    assert format_monomial((0, 0), "xy") == "1"


@given(vec3, vec3, vec3)
def test_join_lattice_laws(a, b, c):
    assert join(a, b) == join(b, a)
    assert join(join(a, b), c) == join(a, join(b, c))
    assert join(a, a) == a
    assert divides(a, join(a, b)) and divides(b, join(a, b))


@given(st.lists(vec3.filter(any), min_size=1, max_size=6), st.randoms())
def test_minimalize_idempotent_and_order_free(gens, rnd):
    once = minimalize(gens)
    assert minimalize(once) == once
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert minimalize(shuffled) == once
    for g in gens:
        assert any(divides(k, g) for k in once)


@given(st.lists(vec3.filter(any), min_size=1, max_size=5), vec3, vec3)
def test_support_monotone(gens, a, extra):
    I = MonomialIdeal.from_generators(gens)
    b = tuple(x + y for x, y in zip(a, extra))
    if in_degree_support(I, a):
        assert in_degree_support(I, b)


def test_generator_order_is_canonical():
    rng = random.Random(3)
    gens = [(1, 0, 1, 0, 0), (1, 0, 0, 0, 1), (0, 1, 0, 1, 0), (0, 0, 0, 1, 1)]
    for _ in range(10):
        rng.shuffle(gens)
        assert MonomialIdeal.from_generators(gens).generators == (
            (1, 0, 1, 0, 0), (1, 0, 0, 0, 1), (0, 1, 0, 1, 0), (0, 0, 0, 1, 1))
