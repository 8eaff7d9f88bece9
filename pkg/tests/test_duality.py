"""Duality maps, kernel witnesses, and isomorphism descriptors."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from trop.convex import ConvexSpan, col_span, row_span, span_equal
from trop.duality import (
    IsoDescriptor,
    apply_iso,
    descriptor_valid,
    identity_descriptor,
    kernel_witness,
    matrix_from_iso,
    theta,
    theta_prime,
    vec_neg,
)
from trop.errors import DomainError, PreconditionError, ShapeError
from trop.linalg import (
    COL,
    ROW,
    TropMatrix,
    TropVector,
    bracket,
    hilbert,
    identity,
    mat_mul,
    scale,
    vec_leq,
    vec_oplus,
    vector,
    zero_vector,
)
from trop.semiring import NEG_INF, POS_INF, ZERO, finite, neg

scalars = st.one_of(
    st.just(NEG_INF),
    st.just(POS_INF),
    st.fractions(min_value=-9, max_value=9, max_denominator=3).map(finite),
)


def matrices(rows, cols):
    return st.lists(
        st.lists(scalars, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    ).map(TropMatrix)


def random_matrices():
    return st.tuples(st.integers(2, 4), st.integers(2, 4)).flatmap(
        lambda rc: matrices(*rc)
    )


def member_of(span_vectors, coeff_list):
    acc = zero_vector(span_vectors[0].dim, span_vectors[0].orientation)
    for c, g in zip(coeff_list, span_vectors):
        acc = vec_oplus(acc, scale(c, g))
    return acc


def with_members(n_members=2):
    def build(m):
        coeffs = st.lists(
            st.lists(scalars, min_size=m.rows, max_size=m.rows),
            min_size=n_members,
            max_size=n_members,
        )
        return st.tuples(st.just(m), coeffs)

    return random_matrices().flatmap(build)


def test_theta_example():
    a = TropMatrix([[ZERO, ZERO], [ZERO, finite(1)]])
    x = vector([0, 0])
    out = theta(a, x)
    assert out == TropVector([ZERO, finite(1)], COL)
    assert theta_prime(a, out) == x


def test_theta_dim1_is_negation():
    a = TropMatrix([[ZERO]])
    c = finite(Fraction(7, 2))
    assert theta(a, TropVector([c], ROW)) == TropVector([neg(c)], COL)
    assert theta_prime(a, TropVector([c], COL)) == TropVector([neg(c)], ROW)


def test_theta_strict_rejects_non_members():
    a = TropMatrix([[ZERO, ZERO], [ZERO, finite(1)]])
    outsider = vector([0, -5])  # not in the row space
    with pytest.raises(DomainError):
        theta(a, outsider)
    # lenient mode evaluates the formula anyway
    assert theta(a, outsider, strict=False) == mat_mul(
        a, vec_neg(outsider).transpose().as_matrix()
    ).as_vector()


def test_theta_finite_matrices_preserve_finiteness():
    a = TropMatrix([[finite(1), finite(-2)], [ZERO, finite(3)]])
    x = member_of(a.row_vectors(), [finite(2), finite(0)])
    out = theta(a, x)
    assert all(e.is_finite for e in out.entries)


def test_theta_shape_errors():
    a = identity(2)
    with pytest.raises(ShapeError):
        theta(a, vector([0, 0, 0]))
    with pytest.raises(ShapeError):
        theta(a, TropVector([ZERO, ZERO], COL))


def test_kernel_witness_example():
    b = TropMatrix([[ZERO, ZERO]])
    z = vector([0, 1])
    x, y = kernel_witness(b, z)
    assert x == TropVector([ZERO, finite(-1)], COL)
    assert y == TropVector([ZERO, ZERO], COL)
    assert mat_mul(b, x.as_matrix()) == mat_mul(b, y.as_matrix()) == TropMatrix([[ZERO]])
    assert mat_mul(z.as_matrix(), x.as_matrix()) == TropMatrix([[ZERO]])
    assert mat_mul(z.as_matrix(), y.as_matrix()) == TropMatrix([[finite(1)]])


def test_kernel_witness_rejects_members():
    for z_entries in ([0, 0], [1, -3], [5, 5]):
        with pytest.raises(PreconditionError):
            kernel_witness(identity(2), vector(z_entries))


def test_kernel_witness_with_zero_entries():
    b = TropMatrix([[ZERO, NEG_INF]])
    z = vector([0, 0])
    x, y = kernel_witness(b, z)
    assert mat_mul(b, x.as_matrix()) == mat_mul(b, y.as_matrix())
    assert mat_mul(z.as_matrix(), x.as_matrix()) != mat_mul(z.as_matrix(), y.as_matrix())


def test_apply_iso_identity():
    basis = (vector([0, 0]), vector([0, 1]))
    f = identity_descriptor(basis)
    assert descriptor_valid(f)
    c = member_of(basis, [finite(2), finite(-1)])
    assert apply_iso(f, c) == c


def test_apply_iso_single_ray():
    e1 = vector([1, 4])
    f1 = vector([0, 2])
    f = IsoDescriptor((e1,), (f1,), (0,), (finite(3),))
    assert apply_iso(f, scale(finite(5), e1)) == scale(finite(8), f1)


def test_apply_iso_swap_example():
    e = (TropVector([ZERO, NEG_INF], COL), TropVector([NEG_INF, ZERO], COL))
    f = IsoDescriptor(e, e, (1, 0), (ZERO, ZERO))
    c = TropVector([finite(2), finite(5)], COL)
    assert apply_iso(f, c) == TropVector([finite(5), finite(2)], COL)


def test_apply_iso_rejects_outsiders():
    basis = (vector([0, 0]),)
    f = identity_descriptor(basis)
    with pytest.raises(DomainError):
        apply_iso(f, vector([0, 1]))


def test_matrix_from_iso_identity_and_permutation():
    a = TropMatrix([[ZERO, finite(1)], [NEG_INF, finite(2)]])
    basis = tuple(col_span(a).weak_basis().generators)
    ident = identity_descriptor(basis)
    assert matrix_from_iso(a, ident) == a

    # permuting the columns of A permutes the column space generators
    k = len(basis)
    if k == 2:
        swap = IsoDescriptor(basis, basis, (1, 0), (ZERO, ZERO))
        if descriptor_valid(swap):
            d = matrix_from_iso(a, swap)
            assert span_equal(row_span(d), row_span(a))


def test_matrix_from_iso_uniform_scaling():
    a = TropMatrix([[finite(1), finite(-1)], [ZERO, finite(2)]])
    basis = tuple(col_span(a).weak_basis().generators)
    f = IsoDescriptor(
        basis, basis, tuple(range(len(basis))), (finite(1),) * len(basis)
    )
    assert descriptor_valid(f)
    d = matrix_from_iso(a, f)
    assert span_equal(row_span(d), row_span(a))
    assert span_equal(col_span(d), col_span(a))


@settings(deadline=None)
@given(with_members())
def test_duality_bijection(data):
    m, coeff_rows = data
    for coeffs in coeff_rows:
        x = member_of(m.row_vectors(), coeffs)
        assert theta_prime(m, theta(m, x)) == x
    for coeffs in coeff_rows:
        y = member_of(m.col_vectors(), coeffs[: m.cols] or [ZERO])
        if len(coeffs) >= m.cols:
            y = member_of(m.col_vectors(), coeffs[: m.cols])
            assert theta(m, theta_prime(m, y)) == y


@settings(deadline=None)
@given(with_members())
def test_duality_reverses_brackets_and_scaling(data):
    m, (c1, c2) = data
    x = member_of(m.row_vectors(), c1)
    y = member_of(m.row_vectors(), c2)
    assert bracket(x, y) == bracket(theta(m, y), theta(m, x))
    lam = finite(3)
    assert theta(m, scale(lam, x)) == scale(neg(lam), theta(m, x))


@settings(deadline=None)
@given(with_members())
def test_duality_antitone_and_isometric(data):
    m, (c1, c2) = data
    x = member_of(m.row_vectors(), c1)
    y = member_of(m.row_vectors(), c2)
    if vec_leq(x, y):
        assert vec_leq(theta(m, y), theta(m, x))
    assert hilbert(theta(m, x), theta(m, y)) == hilbert(x, y)


@settings(deadline=None)
@given(with_members())
def test_change_of_coordinates(data):
    m, (c1, c2) = data
    rows = m.row_vectors()
    span = ConvexSpan(rows)
    a = member_of(rows, c1)
    b = member_of(rows, c2)

    def coeff_vector(v):
        return TropVector(span.principal_coeffs(v), ROW)

    assert bracket(a, b) == bracket(coeff_vector(a), coeff_vector(b))


@settings(deadline=None)
@given(with_members())
def test_composed_anti_isomorphisms_are_linear(data):
    # duplicate a row: R(A) = R(B), so theta_B after theta_prime_A is a
    # linear isomorphism from C(A) to C(B)
    m, (c1, c2) = data
    b = TropMatrix(list(m.entries) + [m.entries[0]])
    assert span_equal(row_span(m), row_span(b))

    def composite(y):
        return theta(b, theta_prime(m, y))

    u = member_of(m.col_vectors(), c1[: m.cols] if len(c1) >= m.cols else [ZERO] * m.cols)
    v = member_of(m.col_vectors(), c2[: m.cols] if len(c2) >= m.cols else [ZERO] * m.cols)
    assert composite(vec_oplus(u, v)) == vec_oplus(composite(u), composite(v))
    lam = finite(-2)
    assert composite(scale(lam, u)) == scale(lam, composite(u))


@settings(deadline=None, max_examples=40)
@given(random_matrices(), st.data())
def test_kernel_witness_random(m, data):
    rspan = row_span(m)
    z = None
    for _ in range(25):
        cand = TropVector(
            [data.draw(scalars) for _ in range(m.cols)], ROW
        )
        if not rspan.member(cand):
            z = cand
            break
    if z is None:
        return
    x, y = kernel_witness(m, z)
    assert mat_mul(m, x.as_matrix()) == mat_mul(m, y.as_matrix())
    assert mat_mul(z.as_matrix(), x.as_matrix()) != mat_mul(z.as_matrix(), y.as_matrix())
