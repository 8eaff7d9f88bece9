"""Text formats and the command line: round-trips, exit codes, replay."""

import json
from fractions import Fraction

import pytest

from trop import formats
from trop.cli import main
from trop.duality import IsoDescriptor, identity_descriptor
from trop.errors import ParseError
from trop.greens import leq_R, rel_D
from trop.linalg import (
    COL,
    TropMatrix,
    TropVector,
    identity,
    transpose,
    zero_matrix,
)
from trop.semiring import NEG_INF, POS_INF, ZERO, finite


def test_matrix_round_trip():
    m = TropMatrix(
        [[finite(Fraction(-5, 3)), NEG_INF], [POS_INF, finite(7)]]
    )
    assert formats.parse_matrix(formats.format_matrix(m)) == m


def test_vector_round_trip():
    v = TropVector([ZERO, NEG_INF, finite(Fraction(1, 2))], COL)
    assert formats.parse_vector(formats.format_vector(v)) == v


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        formats.parse_matrix("2 2\n0 1\n0 oops\n")
    assert err.value.line == 3
    assert err.value.column == 3

    with pytest.raises(ParseError):
        formats.parse_matrix("2 2\n0 1\n")  # body ends early
    with pytest.raises(ParseError):
        formats.parse_matrix("2 2\n0 1\n0 2\n9 9\n")  # trailing content


def test_descriptor_round_trip():
    basis = (TropVector([ZERO, finite(1)], COL), TropVector([finite(2), NEG_INF], COL))
    f = IsoDescriptor(basis, basis, (1, 0), (finite(Fraction(1, 3)), ZERO))
    assert formats.parse_descriptor(formats.format_descriptor(f)) == f

    empty = identity_descriptor((), shape=(3, COL))
    assert formats.parse_descriptor(formats.format_descriptor(empty)) == empty


def test_verdict_round_trip_order_relation():
    a = TropMatrix([[finite(1), NEG_INF], [finite(2), ZERO]])
    v = leq_R(a, identity(2))
    assert formats.parse_verdict(formats.format_verdict(v)) == v


def test_verdict_round_trip_d_relation():
    a = TropMatrix([[ZERO, finite(1)], [NEG_INF, finite(2)]])
    v = rel_D(a, transpose(a))
    assert v.holds
    assert formats.parse_verdict(formats.format_verdict(v)) == v


def test_verdict_round_trip_refutation():
    v = rel_D(identity(2), zero_matrix(2, 2))
    assert not v.holds
    assert formats.parse_verdict(formats.format_verdict(v)) == v


@pytest.fixture()
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return tmp_path, write


def test_cli_bracket_and_metric(files, capsys):
    _, write = files
    x = write("x.vec", "1 2\n0 0\n")
    y = write("y.vec", "1 2\n1 2\n")
    assert main(["bracket", x, y]) == 0
    assert capsys.readouterr().out == "1\n"
    assert main(["metric", x, y]) == 0
    assert capsys.readouterr().out == "1\n"


def test_cli_mul_identity(files, capsys):
    _, write = files
    i2 = write("i2.mat", formats.format_matrix(identity(2)))
    a = write("a.mat", "2 2\n0 1\n-inf 2\n")
    assert main(["mul", i2, a]) == 0
    assert capsys.readouterr().out == "2 2\n0 1\n-inf 2\n"


def test_cli_dual_and_inverse(files, capsys):
    _, write = files
    a = write("a.mat", "2 2\n0 0\n0 1\n")
    x = write("x.vec", "1 2\n0 0\n")
    assert main(["dual", a, x]) == 0
    assert capsys.readouterr().out == "2 1\n0\n1\n"
    y = write("y.vec", "2 1\n0\n1\n")
    assert main(["dual", "--inverse", a, y]) == 0
    assert capsys.readouterr().out == "1 2\n0 0\n"


def test_cli_member_yes_no(files, capsys):
    _, write = files
    s = write("s.mat", "2 2\n0 0\n0 1\n")
    good = write("v.vec", "2 1\n1\n2\n")
    bad = write("w.vec", "2 1\n0\n-5\n")
    assert main(["member", good, s, "--orientation", "col"]) == 0
    assert capsys.readouterr().out == "yes\n1 1\n"
    assert main(["member", bad, s, "--orientation", "col"]) == 1
    assert capsys.readouterr().out == "no\n"


def test_cli_basis(files, capsys):
    _, write = files
    s = write("s.mat", "2 3\n0 0 1\n0 1 2\n")
    assert main(["basis", s, "--orientation", "col"]) == 0
    out = capsys.readouterr().out
    parsed = formats.parse_matrix(out)
    assert parsed.cols == 2  # one redundant generator dropped


def test_cli_green_yes_no_witness(files, capsys, tmp_path):
    _, write = files
    a = write("a.mat", "2 2\n0 1\n-inf 2\n")
    at = write("at.mat", "2 2\n0 -inf\n1 2\n")
    z = write("z.mat", "2 2\n-inf -inf\n-inf -inf\n")
    wit = str(tmp_path / "wit.txt")
    assert main(["green", a, at, "--relation", "d", "--witness", wit]) == 0
    assert capsys.readouterr().out == "yes\n"
    v = formats.parse_verdict((tmp_path / "wit.txt").read_text())
    assert v.holds and v.relation == "d"

    assert main(["green", a, z, "--relation", "leq-r"]) == 1
    assert capsys.readouterr().out == "no\n"


def test_cli_green_domain_guard(files, capsys):
    _, write = files
    a = write("a.mat", "2 2\ninf 0\n0 0\n")
    assert main(["green", a, a, "--relation", "d"]) == 2
    err = capsys.readouterr().err
    assert "requires entries in T" in err


def test_cli_green_json(files, capsys):
    _, write = files
    a = write("a.mat", "2 2\n0 1\n-inf 2\n")
    assert main(["green", a, a, "--relation", "h", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["holds"] is True
    assert payload["relation"] == "h"
    assert set(payload["witnesses"]) == {"X", "X2", "Y", "Y2"}


def test_cli_parse_error_exit_code(files, capsys):
    _, write = files
    bad = write("bad.mat", "2 2\n0 zap\n0 0\n")
    good = write("good.mat", "1 1\n0\n")
    assert main(["mul", bad, good]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "column 3" in err


def test_cli_check_deterministic(capsys):
    assert main(["check", "--property", "P2", "--trials", "25", "--seed", "11"]) == 0
    first = capsys.readouterr().out
    assert main(["check", "--property", "P2", "--trials", "25", "--seed", "11"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "failures 0" in first


def test_cli_check_json(capsys):
    assert main(["check", "--property", "P3", "--trials", "10", "--seed", "3",
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["property"] == "P3"
    assert payload["failures"] == []


def test_cli_witness_replay(files, capsys, tmp_path):
    # a witness written by green re-multiplies through mul byte-exactly
    _, write = files
    a_text = "2 2\n0 0\n0 0\n"
    b_text = "2 2\n0 1\n0 1\n"
    a = write("a.mat", a_text)
    b = write("b.mat", b_text)
    wit = str(tmp_path / "wit.txt")
    assert main(["green", a, b, "--relation", "leq-r", "--witness", wit]) == 0
    capsys.readouterr()
    v = formats.parse_verdict((tmp_path / "wit.txt").read_text())
    x = write("x.mat", formats.format_matrix(dict(v.witnesses)["X"]))
    assert main(["mul", b, x]) == 0
    assert capsys.readouterr().out == a_text
