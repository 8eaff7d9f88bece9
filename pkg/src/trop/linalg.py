"""Vectors and matrices over tropical scalars.

Dense, immutable containers plus the residuation bracket, the Hilbert
projective metric, and projective normalization.  Everything is exact;
the decision procedures built on top never see rounding.
"""

from .errors import ShapeError
from .semiring import (
    NEG_INF,
    Domain,
    TropScalar,
    ZERO,
    domain_of,
    finite,
    leq,
    neg,
    oplus,
    otimes,
)

ROW = "row"
COL = "col"


def _check_orientation(orientation):
    if orientation not in (ROW, COL):
        raise ShapeError(f"orientation must be {ROW!r} or {COL!r}, got {orientation!r}")


class TropVector:
    """A dense vector of tropical scalars with a row/column orientation."""

    __slots__ = ("entries", "orientation")

    def __init__(self, entries, orientation=ROW):
        entries = tuple(entries)
        if not entries:
            raise ShapeError("vector must have at least one entry")
        _check_orientation(orientation)
        self.entries = entries
        self.orientation = orientation

    @property
    def dim(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, TropVector):
            return NotImplemented
        return self.orientation == other.orientation and self.entries == other.entries

    def __hash__(self):
        return hash((self.orientation, self.entries))

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        body = " ".join(str(e) for e in self.entries)
        return f"TropVector[{self.orientation}]({body})"

    def transpose(self):
        return TropVector(self.entries, COL if self.orientation == ROW else ROW)

    def as_matrix(self):
        if self.orientation == ROW:
            return TropMatrix([list(self.entries)])
        return TropMatrix([[e] for e in self.entries])

    def domain(self) -> Domain:
        return Domain(max((domain_of(e) for e in self.entries), default=Domain.FT))


def vector(values, orientation=ROW) -> TropVector:
    """Build a vector, lifting ints/Fractions to finite scalars."""
    return TropVector([_lift(v) for v in values], orientation)


def _lift(v):
    return v if isinstance(v, TropScalar) else finite(v)


class TropMatrix:
    """A dense rows x cols matrix of tropical scalars."""

    __slots__ = ("entries",)

    def __init__(self, rows):
        rows = tuple(tuple(_lift(e) for e in r) for r in rows)
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("matrix rows must all have the same length")
        self.entries = rows

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    def __eq__(self, other):
        if not isinstance(other, TropMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in r) for r in self.entries)
        return f"TropMatrix({self.rows}x{self.cols}: {body})"

    def row(self, i) -> TropVector:
        return TropVector(self.entries[i], ROW)

    def col(self, j) -> TropVector:
        return TropVector((r[j] for r in self.entries), COL)

    def row_vectors(self):
        return [self.row(i) for i in range(self.rows)]

    def col_vectors(self):
        return [self.col(j) for j in range(self.cols)]

    def as_vector(self) -> TropVector:
        if self.rows == 1:
            return self.row(0)
        if self.cols == 1:
            return self.col(0)
        raise ShapeError(f"{self.rows}x{self.cols} matrix is not a vector")

    def domain(self) -> Domain:
        return Domain(max(domain_of(e) for r in self.entries for e in r))

    def is_square(self):
        return self.rows == self.cols


def matrix(rows) -> TropMatrix:
    return TropMatrix(rows)


def identity(n) -> TropMatrix:
    """Tropical identity: 0 on the diagonal, -inf elsewhere."""
    return TropMatrix([[ZERO if i == j else NEG_INF for j in range(n)] for i in range(n)])


def zero_matrix(rows, cols) -> TropMatrix:
    return TropMatrix([[NEG_INF] * cols for _ in range(rows)])


def zero_vector(dim, orientation=ROW) -> TropVector:
    return TropVector([NEG_INF] * dim, orientation)


def mat_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Tropical matrix product: (AB)_ij = max_k (A_ik + B_kj)."""
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        arow = a.entries[i]
        orow = []
        for j in range(b.cols):
            acc = NEG_INF
            for k in range(a.cols):
                acc = oplus(acc, otimes(arow[k], b.entries[k][j]))
            orow.append(acc)
        out.append(orow)
    return TropMatrix(out)


def transpose(a: TropMatrix) -> TropMatrix:
    return TropMatrix(list(zip(*a.entries)))


def scale(lam: TropScalar, x: TropVector) -> TropVector:
    """Tropical scaling: add lam to every entry."""
    lam = _lift(lam)
    return TropVector([otimes(lam, e) for e in x.entries], x.orientation)


def _check_same_shape(x: TropVector, y: TropVector, orientation_too=True):
    if x.dim != y.dim:
        raise ShapeError(f"dimension mismatch: {x.dim} vs {y.dim}")
    if orientation_too and x.orientation != y.orientation:
        raise ShapeError(f"orientation mismatch: {x.orientation} vs {y.orientation}")


def vec_oplus(x: TropVector, y: TropVector) -> TropVector:
    _check_same_shape(x, y)
    return TropVector([oplus(a, b) for a, b in zip(x.entries, y.entries)], x.orientation)


def vec_leq(x: TropVector, y: TropVector) -> bool:
    _check_same_shape(x, y)
    return all(leq(a, b) for a, b in zip(x.entries, y.entries))


def mat_oplus(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.rows != b.rows or a.cols != b.cols:
        raise ShapeError(f"shape mismatch: {a.rows}x{a.cols} vs {b.rows}x{b.cols}")
    return TropMatrix(
        [[oplus(p, q) for p, q in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)]
    )


def bracket(x: TropVector, y: TropVector) -> TropScalar:
    """Residuation bracket <x|y>: the greatest lam with lam*x <= y.

    Computed by the closed form -(max_i x_i * (-y_i)), which agrees with
    the defining maximum for all TBAR entries, including the exceptional
    products involving both infinities.
    """
    _check_same_shape(x, y, orientation_too=False)
    acc = NEG_INF
    for a, b in zip(x.entries, y.entries):
        acc = oplus(acc, otimes(a, neg(b)))
    return neg(acc)


def proj_normalize(x: TropVector) -> TropVector:
    """Canonical representative of x in projective space.

    Scales so the maximum finite entry becomes 0.  The zero vector, and
    any vector containing +inf, have no finite canonicalizing scaling
    and are returned unchanged.  Idempotent.
    """
    if any(e.is_pos_inf for e in x.entries):
        return x
    top = None
    for e in x.entries:
        if e.is_finite and (top is None or e.value > top):
            top = e.value
    if top is None:
        return x
    return scale(finite(-top), x)


def hilbert(x: TropVector, y: TropVector) -> TropScalar:
    """Hilbert projective distance: 0 for finite scalings, else
    -(<x|y> * <y|x>).  Values are nonnegative rationals or +inf."""
    _check_same_shape(x, y, orientation_too=False)
    if proj_normalize(x) == proj_normalize(y):
        return ZERO
    return neg(otimes(bracket(x, y), bracket(y, x)))


def matrix_domain_within(a: TropMatrix, domain: Domain) -> bool:
    return a.domain() <= domain


def map_entries(a: TropMatrix, f) -> TropMatrix:
    return TropMatrix([[f(e) for e in r] for r in a.entries])
