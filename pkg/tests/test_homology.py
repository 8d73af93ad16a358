import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bettikit import GF, QQ, parse_ideal
from bettikit.homology import (
    ChainComplexK,
    Field,
    FieldError,
    FieldMatrix,
    NotAComplexError,
    boundary_matrices,
    homology_dims,
    nonzero,
    parse_field,
    rank,
    reduced_homology_dims,
)
from bettikit.poset import Poset, SimplicialComplex, lcm_lattice, open_filter, order_complex
from bettikit.resolution import strand, taylor_complex

from oracles import dense_rank, reduced_homology_of_faces

HOLLOW_TRIANGLE = SimplicialComplex.from_facets("abc", [(0, 1), (1, 2), (0, 2)])
FULL_TRIANGLE = SimplicialComplex.from_facets("abc", [(0, 1, 2)])
EMPTY = SimplicialComplex((), ())


def test_field_parsing():
    assert parse_field("q") == QQ
    assert parse_field("gf:7") == GF(7)
    assert parse_field("GF(3)") == GF(3)
    for bad in ["gf:4", "gf:1", "r", "gf:x", "gf:32771"]:
        with pytest.raises(FieldError):
            parse_field(bad)
    assert GF(5)(Fraction(1, 2)) == 3
    with pytest.raises(FieldError):
        GF(2)(Fraction(1, 2))


def test_rank_basics(field):
    I3 = FieldMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]], field)
    assert rank(I3) == 3
    assert rank(FieldMatrix.zero(3, 4, field)) == 0
    assert rank(FieldMatrix.from_dense([[2]], GF(2))) == 0
    assert rank(FieldMatrix.from_dense([[2]], QQ)) == 1


def test_matrix_drops_zeros_and_checks_bounds():
    M = FieldMatrix(2, 2, {(0, 0): 3, (1, 1): 0}, GF(3))
    assert M.entries == {}
    with pytest.raises(IndexError):
        FieldMatrix(1, 1, {(1, 0): 1})


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.sampled_from([0, 2, 3, 5]), st.integers(0, 2**32))
def test_rank_against_dense_oracle(r, c, p, seed):
    rng = random.Random(seed)
    dense = [[rng.choice([0, 0, 1, -1, 2, 3]) for _ in range(c)] for _ in range(r)]
    if p == 0 and rng.random() < 0.5:
        dense = [[Fraction(x, rng.randint(1, 4)) for x in row] for row in dense]
    # make some rows dependent
    if r > 2:
        dense[-1] = [a + b for a, b in zip(dense[0], dense[1])]
    assert rank(FieldMatrix.from_dense(dense, Field(p))) == dense_rank(dense, p)


def test_boundary_examples(field):
    C = boundary_matrices(HOLLOW_TRIANGLE, field)
    assert C.differential(1).shape == (3, 3) and rank(C.differential(1)) == 2
    point = SimplicialComplex.from_facets("v", [(0,)])
    C = boundary_matrices(point, field, reduced=True)
    assert C.differential(0).to_dense() == [[1]]
    C = boundary_matrices(FULL_TRIANGLE, field)
    assert rank(C.differential(2)) == 1 and rank(C.differential(1)) == 2
    assert C.is_complex()


def test_reduced_homology_examples(field):
    assert nonzero(reduced_homology_dims(EMPTY, field)) == {-1: 1}
    two_points = SimplicialComplex.from_facets("ab", [(0,), (1,)])
    assert nonzero(reduced_homology_dims(two_points, field)) == {0: 1}
    assert nonzero(reduced_homology_dims(HOLLOW_TRIANGLE, field)) == {1: 1}
    assert nonzero(reduced_homology_dims(FULL_TRIANGLE, field)) == {}


def test_octagon_homology(field, ideal_J):
    K = order_complex(open_filter(lcm_lattice(ideal_J), (1, 1, 1, 1)))
    faces = {frozenset()} | {frozenset(f) for fs in K.faces for f in fs}
    oracle = reduced_homology_of_faces(faces, range(len(K.vertices)), field.characteristic)
    assert nonzero(oracle) == {1: 1}
    assert nonzero(reduced_homology_dims(K, field)) == {1: 1}


def test_projective_plane_depends_on_field():
    # 6-vertex RP^2: H~_1 and H~_2 are GF(2)-visible only
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5), (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5)]
    K = SimplicialComplex.from_facets(range(6), facets)
    assert nonzero(reduced_homology_dims(K, GF(2))) == {1: 1, 2: 1}
    assert nonzero(reduced_homology_dims(K, QQ)) == {}
    assert nonzero(reduced_homology_dims(K, GF(3))) == {}


def test_homology_dims_examples(field):
    exact = ChainComplexK(field, {0: 1, 1: 1}, {1: FieldMatrix.from_dense([[1]], field)})
    assert nonzero(homology_dims(exact)) == {}
    zero = ChainComplexK(field, {0: 2, 1: 3, 2: 1})
    assert homology_dims(zero) == {0: 2, 1: 3, 2: 1}
    S = strand(taylor_complex(parse_ideal("x, y")), (1, 1), field, augment=False)
    assert S.dims() == (2, 1)
    assert homology_dims(S.complex) == {0: 1, 1: 0}


def test_not_a_complex():
    d1 = FieldMatrix.from_dense([[1]])
    d2 = FieldMatrix.from_dense([[1]])
    with pytest.raises(NotAComplexError):
        homology_dims(ChainComplexK(QQ, {0: 1, 1: 1, 2: 1}, {1: d1, 2: d2}))
    with pytest.raises(ValueError):
        ChainComplexK(QQ, {0: 2, 1: 1}, {1: d1})


def random_complex(rng, n_vertices=7, n_facets=6, max_dim=3):
    facets = []
    for _ in range(rng.randint(1, n_facets)):
        k = rng.randint(1, max_dim + 1)
        facets.append(tuple(rng.sample(range(n_vertices), min(k, n_vertices))))
    return SimplicialComplex.from_facets(range(n_vertices), facets)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([0, 2, 3]))
def test_reduced_homology_against_oracle(seed, p):
    K = random_complex(random.Random(seed))
    faces = {frozenset()} | {frozenset(f) for fs in K.faces for f in fs}
    assert nonzero(reduced_homology_dims(K, Field(p))) == nonzero(reduced_homology_of_faces(faces, range(7), p))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_euler_characteristic_and_rational_below_modular(seed):
    rng = random.Random(seed)
    K = random_complex(rng, n_vertices=8, n_facets=8, max_dim=4)
    hq = reduced_homology_dims(K, QQ)
    for p in (2, 3, 5):
        hp = reduced_homology_dims(K, GF(p))
        assert all(hq[n] <= hp[n] for n in hq)
    C = boundary_matrices(K, QQ)
    H = homology_dims(C)
    assert C.euler_characteristic() == sum((-1) ** n * h for n, h in H.items())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([0, 2, 3]))
def test_cones_are_acyclic(seed, p):
    rng = random.Random(seed)
    K = random_complex(rng, n_vertices=6)
    apex = 6
    cone = SimplicialComplex.from_facets(range(7), [f + (apex,) for f in K.maximal_faces()])
    assert cone.is_cone()
    assert nonzero(reduced_homology_dims(cone, Field(p))) == {}


def test_order_complex_of_poset_with_top_is_acyclic():
    P = Poset.from_relations("abcd", [("a", "c"), ("b", "c"), ("c", "d")])
    assert nonzero(reduced_homology_dims(order_complex(P))) == {}
