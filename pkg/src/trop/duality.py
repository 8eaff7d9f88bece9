"""Duality maps between row and column spaces, and span isomorphisms.

The duality map of a matrix A sends a row-space element x to A*(-x)^T.
It reverses the residuation bracket and anti-commutes with finite
scaling, so composing two such maps yields a genuine linear isomorphism
of spans.  IsoDescriptor records a candidate isomorphism concretely as
a basis correspondence; validity is always certified by a row-space
equality check, never assumed.
"""

from dataclasses import dataclass

from .convex import ConvexSpan, col_span, row_span, span_equal
from .errors import DomainError, PreconditionError, ShapeError, VerificationError
from .linalg import (
    COL,
    ROW,
    TropMatrix,
    TropVector,
    mat_mul,
    scale,
    vec_oplus,
    zero_vector,
)
from .semiring import TropScalar, neg, otimes


def vec_neg(x: TropVector) -> TropVector:
    return TropVector([neg(e) for e in x.entries], x.orientation)


def theta(a: TropMatrix, x: TropVector, strict: bool = True) -> TropVector:
    """Duality map of A at a row vector x: the column vector A*(-x)^T.

    Component i equals -<A_i|x>.  The bracket/scaling/metric laws hold
    for x in the row space of A; strict mode rejects anything else,
    lenient mode just evaluates the formula.
    """
    if x.orientation != ROW or x.dim != a.cols:
        raise ShapeError(f"theta expects a row vector of dim {a.cols}")
    if strict and not row_span(a).member(x):
        raise DomainError("theta: vector is not in the row space (use lenient mode to force)")
    return mat_mul(a, vec_neg(x).transpose().as_matrix()).col(0)


def theta_prime(a: TropMatrix, y: TropVector, strict: bool = True) -> TropVector:
    """Inverse duality map at a column vector y: the row vector (-y)^T*A."""
    if y.orientation != COL or y.dim != a.rows:
        raise ShapeError(f"theta_prime expects a column vector of dim {a.rows}")
    if strict and not col_span(a).member(y):
        raise DomainError(
            "theta_prime: vector is not in the column space (use lenient mode to force)"
        )
    return mat_mul(vec_neg(y).transpose().as_matrix(), a).row(0)


def kernel_witness(b: TropMatrix, z: TropVector):
    """For a row vector z outside the row space of B, produce columns
    x, y with B*x = B*y but z*x != z*y.

    x is -z transposed; y is recovered by pulling B*x back through the
    inverse duality map and negating.  Both identities are re-verified
    before returning; a failure there would be an internal bug.
    """
    if z.orientation != ROW or z.dim != b.cols:
        raise ShapeError(f"kernel_witness expects a row vector of dim {b.cols}")
    if row_span(b).member(z):
        raise PreconditionError("kernel_witness: z lies in the row space of B")
    x = vec_neg(z).transpose()
    bx = mat_mul(b, x.as_matrix()).col(0)
    # bx is a combination of the columns of B by construction
    v = theta_prime(b, bx, strict=False)
    y = vec_neg(v).transpose()
    by = mat_mul(b, y.as_matrix()).col(0)
    if bx != by:
        raise VerificationError("kernel_witness: B*x != B*y")
    zrow = z.as_matrix()
    zx = mat_mul(zrow, x.as_matrix()).entries[0][0]
    zy = mat_mul(zrow, y.as_matrix()).entries[0][0]
    if zx == zy:
        raise VerificationError("kernel_witness: z*x == z*y")
    return x, y


@dataclass(frozen=True)
class IsoDescriptor:
    """A candidate span isomorphism e_i -> lambdas_i * target[sigma_i].

    sigma is a 0-based permutation of the basis indices and every
    lambda is a finite rational.  The map extends linearly to the whole
    source span via principal coefficients; whether the extension is a
    genuine isomorphism is decided by :func:`descriptor_valid`.
    """

    source: tuple
    target: tuple
    sigma: tuple
    lambdas: tuple
    source_shape: tuple = None  # (dim, orientation); required when k = 0
    target_shape: tuple = None

    def __post_init__(self):
        k = len(self.source)
        if not (len(self.target) == len(self.sigma) == len(self.lambdas) == k):
            raise ShapeError("descriptor parts must have equal length")
        if sorted(self.sigma) != list(range(k)):
            raise ShapeError("sigma must be a permutation of 0..k-1")
        for lam in self.lambdas:
            if not (isinstance(lam, TropScalar) and lam.is_finite):
                raise DomainError("descriptor scalings must be finite rationals")
        if k == 0:
            if self.source_shape is None or self.target_shape is None:
                raise ShapeError("empty descriptor needs explicit source/target shapes")
        else:
            # normalize shapes so equality is insensitive to how the
            # descriptor was built
            s, t = self.source[0], self.target[0]
            object.__setattr__(self, "source_shape", (s.dim, s.orientation))
            object.__setattr__(self, "target_shape", (t.dim, t.orientation))

    @property
    def k(self):
        return len(self.source)

    def source_span(self) -> ConvexSpan:
        if self.k:
            return ConvexSpan(self.source)
        return ConvexSpan((), dim=self.source_shape[0], orientation=self.source_shape[1])

    def image_vectors(self):
        """The images lambdas_i * target[sigma_i], in source order."""
        return [scale(self.lambdas[i], self.target[self.sigma[i]]) for i in range(self.k)]

    def _target_dim_orientation(self):
        if self.k:
            t = self.target[0]
            return t.dim, t.orientation
        return self.target_shape


def identity_descriptor(basis, shape=None) -> IsoDescriptor:
    basis = tuple(basis)
    from .semiring import ZERO

    return IsoDescriptor(
        basis,
        basis,
        tuple(range(len(basis))),
        (ZERO,) * len(basis),
        source_shape=shape,
        target_shape=shape,
    )


def _stack(vectors, dim) -> TropMatrix:
    """Matrix whose i-th column is the i-th vector (orientation ignored)."""
    return TropMatrix([[v.entries[r] for v in vectors] for r in range(dim)])


def descriptor_valid(f: IsoDescriptor) -> bool:
    """Certify that the descriptor extends to a linear isomorphism.

    The correspondence e_i -> image_i extends iff the matrices having
    the e_i and the images as respective i-th columns share a row
    space.  The empty descriptor (zero span to zero span) is valid.
    """
    if f.k == 0:
        return True
    dim_s = f.source[0].dim
    dim_t = f.target[0].dim
    stack_src = _stack(f.source, dim_s)
    stack_img = _stack(f.image_vectors(), dim_t)
    return span_equal(row_span(stack_src), row_span(stack_img))


def apply_iso(f: IsoDescriptor, c: TropVector) -> TropVector:
    """Extend the descriptor linearly and evaluate at c.

    c must belong to the span of the source basis; its principal
    coefficients are pushed through the correspondence.  Agrees with
    e_i -> lambdas_i * target[sigma_i] on the basis itself, and is
    linear whenever the descriptor is valid.
    """
    ok, coeffs = f.source_span().membership(c)
    if not ok:
        raise DomainError("apply_iso: vector is not in the source span")
    tdim, torient = f._target_dim_orientation()
    acc = zero_vector(tdim, torient)
    for i in range(f.k):
        acc = vec_oplus(acc, scale(otimes(coeffs[i], f.lambdas[i]), f.target[f.sigma[i]]))
    return acc


def matrix_from_iso(a: TropMatrix, f: IsoDescriptor) -> TropMatrix:
    """Apply the isomorphism to every column of A and verify the result.

    The output D satisfies R(D) = R(A) and C(D) = span of the basis
    images; both equalities are re-checked here, so an invalid
    descriptor surfaces as a VerificationError naming the failing side
    rather than as a wrong bridge.
    """
    new_cols = [apply_iso(f, a.col(j)) for j in range(a.cols)]
    d = TropMatrix([[col.entries[i] for col in new_cols] for i in range(new_cols[0].dim)])
    if not span_equal(row_span(d), row_span(a)):
        raise VerificationError("matrix_from_iso: row spaces differ")
    tdim, torient = f._target_dim_orientation()
    image_span = ConvexSpan(tuple(f.image_vectors()), dim=tdim, orientation=torient)
    if not span_equal(col_span(d), image_span):
        raise VerificationError("matrix_from_iso: column space differs from basis image span")
    return d
