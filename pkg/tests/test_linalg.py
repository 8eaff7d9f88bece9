"""Vectors, matrices, bracket and Hilbert metric."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from trop.errors import ShapeError
from trop.linalg import (
    ROW,
    TropMatrix,
    TropVector,
    bracket,
    hilbert,
    identity,
    mat_mul,
    proj_normalize,
    scale,
    transpose,
    vec_leq,
    vec_oplus,
    vector,
    zero_vector,
)
from trop.semiring import NEG_INF, POS_INF, ZERO, finite

scalars = st.one_of(
    st.just(NEG_INF),
    st.just(POS_INF),
    st.fractions(min_value=-30, max_value=30, max_denominator=6).map(finite),
)


def vectors(dim=None, orientation=ROW):
    dims = st.just(dim) if dim else st.integers(1, 5)
    return dims.flatmap(
        lambda n: st.lists(scalars, min_size=n, max_size=n).map(
            lambda es: TropVector(es, orientation)
        )
    )


def vector_pairs():
    return st.integers(1, 5).flatmap(
        lambda n: st.tuples(vectors(n), vectors(n))
    )


def matrices(rows, cols):
    return st.lists(
        st.lists(scalars, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    ).map(TropMatrix)


def test_mat_mul_example():
    a = TropMatrix([[ZERO, finite(1)], [NEG_INF, finite(2)]])
    b = TropMatrix([[ZERO], [ZERO]])
    assert mat_mul(a, b) == TropMatrix([[finite(1)], [finite(2)]])


def test_mat_mul_identity():
    a = TropMatrix([[finite(3), NEG_INF], [finite(-1), POS_INF]])
    assert mat_mul(a, identity(2)) == a
    assert mat_mul(identity(2), a) == a


def test_mat_mul_exceptional_product():
    assert mat_mul(TropMatrix([[NEG_INF]]), TropMatrix([[POS_INF]])) == TropMatrix(
        [[NEG_INF]]
    )


def test_mat_mul_shape_error():
    with pytest.raises(ShapeError):
        mat_mul(identity(2), identity(3))


def test_scale_examples():
    assert scale(finite(2), vector([0, -1])) == vector([2, 1])
    assert scale(NEG_INF, vector([0, 5])) == TropVector([NEG_INF, NEG_INF])
    assert scale(POS_INF, TropVector([ZERO, NEG_INF])) == TropVector([POS_INF, NEG_INF])


def test_vec_oplus_and_leq_examples():
    assert vec_oplus(vector([0, 3]), vector([1, 2])) == vector([1, 3])
    assert vec_leq(TropVector([NEG_INF, ZERO]), vector([0, 0]))
    assert not vec_leq(vector([1, 0]), vector([0, 1]))
    with pytest.raises(ShapeError):
        vec_oplus(vector([0]), vector([0, 1]))


def grid_bracket(x, y):
    """Brute force: the largest lam on a fine rational grid with lam*x <= y.

    Only meaningful when the true bracket is finite and on the grid;
    used to confirm frozen example values independently.
    """
    best = None
    for num in range(-40, 41):
        lam = finite(Fraction(num, 4))
        if vec_leq(scale(lam, x), y):
            if best is None or best.value < lam.value:
                best = lam
    return best


def test_bracket_examples():
    x, y = vector([0, 0]), vector([1, 2])
    assert bracket(x, y) == finite(1)
    assert grid_bracket(x, y) == finite(1)

    x = TropVector([ZERO, NEG_INF])
    y = TropVector([NEG_INF, ZERO])
    assert bracket(x, y) == NEG_INF
    assert grid_bracket(x, y) is None  # no finite scaling works at all

    assert bracket(zero_vector(2), y) == POS_INF


def test_hilbert_examples():
    x, y = vector([0, 0]), vector([0, 3])
    assert hilbert(x, y) == finite(3)
    # cross-check by scanning scalings: the best one-sided fits
    assert bracket(x, y) == finite(0) and bracket(y, x) == finite(-3)

    x = vector([1, 4])
    assert hilbert(x, scale(finite(7), x)) == ZERO

    assert hilbert(TropVector([ZERO, NEG_INF]), vector([0, 0])) == POS_INF


def test_proj_normalize_examples():
    assert proj_normalize(vector([3, 5])) == vector([-2, 0])
    z = zero_vector(2)
    assert proj_normalize(z) == z
    v = TropVector([ZERO, POS_INF, finite(-1)])
    assert proj_normalize(v) == v  # +inf cannot be normalized away
    assert proj_normalize(proj_normalize(vector([3, 5]))) == vector([-2, 0])


def test_transpose_examples():
    a = TropMatrix([[finite(0), finite(1)], [finite(2), finite(3)]])
    assert transpose(a) == TropMatrix([[finite(0), finite(2)], [finite(1), finite(3)]])
    assert transpose(transpose(a)) == a
    row = TropMatrix([[finite(1), finite(2), finite(3)]])
    assert transpose(row).rows == 3 and transpose(row).cols == 1


@given(vector_pairs())
def test_bracket_is_the_defining_maximum(pair):
    x, y = pair
    lam = bracket(x, y)
    assert vec_leq(scale(lam, x), y)
    if lam.is_finite:
        assert not vec_leq(scale(finite(lam.value + 1), x), y)
        assert not vec_leq(scale(finite(lam.value + Fraction(1, 7)), x), y)


@given(vector_pairs())
def test_bracket_sign_change(pair):
    x, y = pair
    nx = TropVector([POS_INF if e.is_neg_inf else NEG_INF if e.is_pos_inf else finite(-e.value) for e in x.entries], x.orientation)
    ny = TropVector([POS_INF if e.is_neg_inf else NEG_INF if e.is_pos_inf else finite(-e.value) for e in y.entries], y.orientation)
    assert bracket(x, y) == bracket(ny, nx)


@given(vector_pairs())
def test_order_iff_nonnegative_bracket(pair):
    x, y = pair
    assert vec_leq(x, y) == (ZERO <= bracket(x, y))


@given(vector_pairs())
def test_hilbert_symmetric_nonnegative(pair):
    x, y = pair
    d = hilbert(x, y)
    assert d == hilbert(y, x)
    assert ZERO <= d


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(vectors(n), vectors(n), vectors(n))))
def test_hilbert_triangle(triple):
    from trop.semiring import leq, otimes

    x, y, z = triple
    assert leq(hilbert(x, z), otimes(hilbert(x, y), hilbert(y, z)))


@given(vector_pairs(), st.fractions(min_value=-9, max_value=9, max_denominator=3),
       st.fractions(min_value=-9, max_value=9, max_denominator=3))
def test_hilbert_scaling_invariance(pair, lam, mu):
    x, y = pair
    assert hilbert(scale(finite(lam), x), scale(finite(mu), y)) == hilbert(x, y)


def is_finite_scaling(x, y):
    if any(a.is_finite != b.is_finite or (not a.is_finite and a != b)
           for a, b in zip(x.entries, y.entries)):
        return False
    for a, b in zip(x.entries, y.entries):
        if a.is_finite:
            return scale(finite(b.value - a.value), x) == y
    return True  # identical infinity patterns and no finite entries


@given(vector_pairs())
def test_hilbert_zero_iff_proportional(pair):
    x, y = pair
    assert (hilbert(x, y) == ZERO) == is_finite_scaling(x, y)


@settings(deadline=None)
@given(matrices(2, 3), matrices(3, 2), matrices(2, 2))
def test_mat_mul_associative(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@settings(deadline=None)
@given(matrices(2, 3), matrices(3, 3))
def test_transpose_antimultiplicative(a, b):
    assert transpose(mat_mul(a, b)) == mat_mul(transpose(b), transpose(a))
