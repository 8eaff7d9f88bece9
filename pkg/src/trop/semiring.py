"""Exact scalar arithmetic for the max-plus semirings FT, T and TBAR.

Scalars are exact rationals extended with -inf and +inf.  Addition is
maximum (``oplus``), multiplication is ordinary addition (``otimes``).
The completed semiring TBAR makes +inf absorbing for both operations,
with the one exceptional product (-inf) * (+inf) = (+inf) * (-inf) = -inf.
All equality here is decidable, structural equality of reduced fractions.
"""

from enum import IntEnum
from fractions import Fraction

from .errors import ParseError

_NEG = -1
_FIN = 0
_POS = 1


class Domain(IntEnum):
    """Which of the three nested semirings a value (or matrix) lives in.

    FT admits only finite rationals, T adds -inf, TBAR adds +inf.
    ``max`` of two tags is the join (smallest domain containing both).
    """

    FT = 0
    T = 1
    TBAR = 2


class TropScalar:
    """A rational number, -inf, or +inf, totally ordered.

    Instances are immutable and hashable; rationals are kept in reduced
    canonical form by ``fractions.Fraction``, so ``==`` is exact.
    """

    __slots__ = ("kind", "value")

    def __init__(self, kind, value=None):
        self.kind = kind  # _NEG | _FIN | _POS
        self.value = value  # Fraction when finite, else None

    @property
    def is_finite(self):
        return self.kind == _FIN

    @property
    def is_neg_inf(self):
        return self.kind == _NEG

    @property
    def is_pos_inf(self):
        return self.kind == _POS

    def __eq__(self, other):
        if not isinstance(other, TropScalar):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __hash__(self):
        return hash((self.kind, self.value))

    def __le__(self, other):
        if self.kind != other.kind:
            return self.kind < other.kind
        if self.kind != _FIN:
            return True
        return self.value <= other.value

    def __lt__(self, other):
        return self.__le__(other) and self != other

    def __ge__(self, other):
        return other.__le__(self)

    def __gt__(self, other):
        return other.__le__(self) and self != other

    def __repr__(self):
        return f"TropScalar({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


NEG_INF = TropScalar(_NEG)
POS_INF = TropScalar(_POS)


def finite(x) -> TropScalar:
    """Finite scalar from an int, Fraction, or fraction string like '3/2'."""
    return TropScalar(_FIN, Fraction(x))


ZERO = finite(0)  # multiplicative identity (tropical "one")


def oplus(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical addition: max under the total order."""
    return b if leq(a, b) else a


def otimes(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical multiplication: a + b, with -inf absorbing even against +inf."""
    ak, bk = a.kind, b.kind
    if ak == _NEG or bk == _NEG:
        return NEG_INF
    if ak == _POS or bk == _POS:
        return POS_INF
    return TropScalar(_FIN, a.value + b.value)


def neg(a: TropScalar) -> TropScalar:
    """The order-reversing involution x -> -x, swapping the infinities."""
    if a.kind == _FIN:
        return TropScalar(_FIN, -a.value)
    return NEG_INF if a.kind == _POS else POS_INF


def leq(a: TropScalar, b: TropScalar) -> bool:
    """Total order with -inf < rationals < +inf."""
    if a.kind != b.kind:
        return a.kind < b.kind
    if a.kind != _FIN:
        return True
    return a.value <= b.value


def domain_of(a: TropScalar) -> Domain:
    """Smallest domain tag containing the scalar."""
    if a.kind == _FIN:
        return Domain.FT
    return Domain.T if a.kind == _NEG else Domain.TBAR


def parse_scalar(token: str, line=None, column=None) -> TropScalar:
    """Parse a scalar token: 'inf', '-inf', or a (signed) integer or p/q.

    Round-trips bit-exactly with :func:`format_scalar`.
    """
    if token == "-inf":
        return NEG_INF
    if token == "inf":
        return POS_INF
    try:
        return TropScalar(_FIN, Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad scalar token {token!r}", line, column) from None


def format_scalar(a: TropScalar) -> str:
    """Canonical token for a scalar; inverse of :func:`parse_scalar`."""
    if a.kind == _NEG:
        return "-inf"
    if a.kind == _POS:
        return "inf"
    return str(a.value)


def parse_domain(name: str) -> Domain:
    try:
        return Domain[name.upper()]
    except KeyError:
        raise ParseError(f"unknown domain {name!r} (expected ft, t, or tbar)") from None


def format_domain(d: Domain) -> str:
    return d.name.lower()
