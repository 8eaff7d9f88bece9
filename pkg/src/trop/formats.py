"""Text formats for scalars, matrices, vectors, spans, descriptors and
verdicts.

All formats round-trip bit-exactly: parse(print(x)) == x.  A matrix is
a `rows cols` header line followed by that many rows of whitespace
separated scalar tokens; vectors are 1 x n or n x 1 matrices.  Spans
travel as a generator matrix plus an orientation flag.  Descriptor and
basis blocks carry their own headers and may declare zero generators
(the zero span), which the plain matrix reader rejects.
"""

from .convex import ConvexSpan
from .duality import IsoDescriptor
from .errors import ParseError
from .greens import RELATIONS, GreenVerdict
from .linalg import COL, ROW, TropMatrix, TropVector
from .semiring import (
    format_domain,
    format_scalar,
    parse_domain,
    parse_scalar,
)


def format_matrix(a: TropMatrix) -> str:
    lines = [f"{a.rows} {a.cols}"]
    for row in a.entries:
        lines.append(" ".join(format_scalar(e) for e in row))
    return "\n".join(lines) + "\n"


def format_vector(x: TropVector) -> str:
    return format_matrix(x.as_matrix())


class _Lines:
    """Line cursor over the input that tracks 1-based line numbers."""

    def __init__(self, text):
        self.lines = text.splitlines()
        self.pos = 0

    def next_content_line(self):
        while self.pos < len(self.lines):
            line = self.lines[self.pos]
            self.pos += 1
            if line.strip():
                return line, self.pos
        return None, self.pos

    def expect_line(self, what):
        line, lineno = self.next_content_line()
        if line is None:
            raise ParseError(f"missing {what}", line=lineno)
        return line, lineno

    @property
    def exhausted(self):
        return all(not l.strip() for l in self.lines[self.pos :])

    def require_exhausted(self, what):
        if not self.exhausted:
            _, lineno = self.next_content_line()
            raise ParseError(f"trailing content after {what}", line=lineno)


def _parse_tokens(line, lineno, expected, what):
    tokens = line.split()
    if len(tokens) != expected:
        raise ParseError(f"expected {expected} {what}, found {len(tokens)}", line=lineno)
    return tokens


def _token_column(line, index):
    # 1-based character column of the index-th whitespace token
    col = 0
    for i, tok in enumerate(line.split()):
        col = line.index(tok, col)
        if i == index:
            return col + 1
        col += len(tok)
    return 1


def _parse_scalar_row(line, lineno, expected):
    tokens = _parse_tokens(line, lineno, expected, "scalar tokens")
    return [
        parse_scalar(tok, line=lineno, column=_token_column(line, i))
        for i, tok in enumerate(tokens)
    ]


def _parse_int_pair(line, lineno, what):
    tokens = _parse_tokens(line, lineno, 2, what)
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(f"{what} must be integers", line=lineno) from None


def _parse_matrix_block(cur: _Lines) -> TropMatrix:
    line, lineno = cur.expect_line("matrix header")
    rows, cols = _parse_int_pair(line, lineno, "header fields (rows cols)")
    if rows < 1 or cols < 1:
        raise ParseError(f"bad matrix shape {rows} x {cols}", line=lineno)
    body = []
    for _ in range(rows):
        line, lineno = cur.expect_line("matrix row")
        body.append(_parse_scalar_row(line, lineno, cols))
    return TropMatrix(body)


def parse_matrix(text: str) -> TropMatrix:
    cur = _Lines(text)
    m = _parse_matrix_block(cur)
    cur.require_exhausted("matrix body")
    return m


def parse_vector(text: str, orientation=None) -> TropVector:
    """A vector is a 1 x n (row) or n x 1 (column) matrix.  A 1 x 1
    matrix is ambiguous and parses as a row unless an orientation is
    supplied by the caller."""
    m = parse_matrix(text)
    if m.rows != 1 and m.cols != 1:
        raise ParseError(f"{m.rows} x {m.cols} matrix is not a vector")
    v = m.as_vector()
    if orientation is not None and v.dim == 1 and v.orientation != orientation:
        return v.transpose()
    return v


def parse_orientation(name: str):
    if name not in (ROW, COL):
        raise ParseError(f"unknown orientation {name!r} (expected row or col)")
    return name


def span_from_matrix(m: TropMatrix, orientation) -> ConvexSpan:
    """Interpret a matrix as a span: its rows or its columns generate."""
    vectors = m.row_vectors() if orientation == ROW else m.col_vectors()
    return ConvexSpan(vectors)


def format_span(s: ConvexSpan) -> str:
    """Generators stacked in the span's natural shape (rows of a k x dim
    matrix for row spans, columns of a dim x k matrix for column spans).
    A zero span prints as a `0 dim` generator count header."""
    gens = s.generators
    if not gens:
        return f"0 {s.dim}\n"
    if s.orientation == ROW:
        rows = [list(g.entries) for g in gens]
    else:
        rows = [[g.entries[i] for g in gens] for i in range(s.dim)]
    return format_matrix(TropMatrix(rows))


def _format_basis_block(vectors, shape):
    if vectors:
        dim, orientation = vectors[0].dim, vectors[0].orientation
    else:
        dim, orientation = shape
    lines = [f"{orientation} {len(vectors)} {dim}"]
    for v in vectors:
        lines.append(" ".join(format_scalar(e) for e in v.entries))
    return lines


def format_descriptor(f: IsoDescriptor) -> str:
    """Descriptor block: k, sigma (1-based), lambda line, then source and
    target bases as `orientation k dim` headed generator row lists."""
    lines = [str(f.k)]
    if f.k:
        lines.append(" ".join(str(i + 1) for i in f.sigma))
        lines.append(" ".join(format_scalar(l) for l in f.lambdas))
    lines.extend(_format_basis_block(f.source, f.source_shape))
    lines.extend(_format_basis_block(f.target, f.target_shape))
    return "\n".join(lines) + "\n"


def _parse_basis_block(cur: _Lines):
    line, lineno = cur.expect_line("basis header")
    tokens = _parse_tokens(line, lineno, 3, "basis header fields")
    orientation = parse_orientation(tokens[0])
    try:
        k, dim = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise ParseError("basis header counts must be integers", line=lineno) from None
    if k < 0 or dim < 1:
        raise ParseError(f"bad basis shape {k} generators x {dim}", line=lineno)
    vectors = []
    for _ in range(k):
        line, lineno = cur.expect_line("basis generator row")
        vectors.append(TropVector(_parse_scalar_row(line, lineno, dim), orientation))
    return tuple(vectors), (dim, orientation)


def _parse_descriptor_block(cur: _Lines) -> IsoDescriptor:
    line, lineno = cur.expect_line("descriptor size line")
    try:
        k = int(line.strip())
    except ValueError:
        raise ParseError("descriptor size must be an integer", line=lineno) from None
    if k == 0:
        sigma, lambdas = (), ()
    else:
        line, lineno = cur.expect_line("permutation line")
        sigma = tuple(
            int(t) - 1 for t in _parse_tokens(line, lineno, k, "permutation entries")
        )
        line, lineno = cur.expect_line("scaling line")
        lambdas = tuple(_parse_scalar_row(line, lineno, k))
    source, source_shape = _parse_basis_block(cur)
    target, target_shape = _parse_basis_block(cur)
    return IsoDescriptor(
        source, target, sigma, lambdas, source_shape=source_shape, target_shape=target_shape
    )


def parse_descriptor(text: str) -> IsoDescriptor:
    cur = _Lines(text)
    f = _parse_descriptor_block(cur)
    cur.require_exhausted("descriptor")
    return f


def format_verdict(v: GreenVerdict) -> str:
    lines = [f"{v.relation} {'yes' if v.holds else 'no'} {format_domain(v.domain)}"]
    for label, m in v.witnesses:
        lines.append(f"witness {label}")
        lines.append(format_matrix(m).rstrip("\n"))
    if v.iso is not None:
        lines.append("iso")
        lines.append(format_descriptor(v.iso).rstrip("\n"))
    if v.bridge is not None:
        lines.append("bridge")
        lines.append(format_matrix(v.bridge).rstrip("\n"))
    for reason in v.reasons:
        lines.append(f"reason: {reason}")
    return "\n".join(lines) + "\n"


def parse_verdict(text: str) -> GreenVerdict:
    cur = _Lines(text)
    line, lineno = cur.expect_line("verdict line")
    tokens = _parse_tokens(line, lineno, 3, "verdict fields")
    relation, holds_token, domain_token = tokens
    if relation not in RELATIONS:
        raise ParseError(f"unknown relation {relation!r}", line=lineno)
    if holds_token not in ("yes", "no"):
        raise ParseError("verdict must be yes or no", line=lineno)
    domain = parse_domain(domain_token)
    witnesses = []
    iso = None
    bridge = None
    reasons = []
    while True:
        line, lineno = cur.next_content_line()
        if line is None:
            break
        if line.startswith("witness "):
            label = line.split(None, 1)[1]
            witnesses.append((label, _parse_matrix_block(cur)))
        elif line.strip() == "iso":
            iso = _parse_descriptor_block(cur)
        elif line.strip() == "bridge":
            bridge = _parse_matrix_block(cur)
        elif line.startswith("reason: "):
            reasons.append(line[len("reason: ") :])
        else:
            raise ParseError(f"unexpected verdict block {line!r}", line=lineno)
    return GreenVerdict(
        relation,
        holds_token == "yes",
        domain,
        witnesses=tuple(witnesses),
        iso=iso,
        bridge=bridge,
        reasons=tuple(reasons),
    )
