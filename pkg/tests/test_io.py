import pytest
from hypothesis import given

from lquasi.construct import affine_cyclic
from lquasi.io import LQTParseError, format_lqt, parse_lqt, parse_lqt_stream, read_lqt, write_lqt

from conftest import left_quasigroups


def test_parse_basic():
    Q = parse_lqt("# name: D3\n3\n0 2 1\n2 1 0\n1 0 2\n")
    assert Q == affine_cyclic(3, -1)
    assert Q.name == "D3"


def test_rig_is_one_based():
    Q = parse_lqt("3\n1 3 2\n3 2 1\n2 1 3\n", fmt="rig")
    assert Q == affine_cyclic(3, -1)
    assert format_lqt(Q, fmt="rig").splitlines()[-1].split() == ["2", "1", "3"]


def test_transpose():
    Q = parse_lqt("2\n0 0\n1 1\n", transpose=True)
    assert Q.table() == [[0, 1], [0, 1]]


@pytest.mark.parametrize("text,line", [
    ("3\n0 1 2\n0 1\n", 3),
    ("x\n", 1),
    ("2\n0 1\n0 0\n", 3),
    ("2\n0 2\n1 0\n", 2),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(LQTParseError) as e:
        parse_lqt(text)
    assert e.value.line == line
    assert f"line {line}" in str(e.value)


def test_stream_of_blocks():
    text = format_lqt(affine_cyclic(3, -1)) + "\n" + format_lqt(affine_cyclic(4, -1))
    algs = list(parse_lqt_stream(text))
    assert [a.order for a in algs] == [3, 4]


@given(left_quasigroups())
def test_round_trip(Q):
    for fmt in ("lqt", "rig"):
        assert parse_lqt(format_lqt(Q, fmt=fmt), fmt=fmt) == Q


def test_file_round_trip(tmp_path):
    Q = affine_cyclic(5, 2)
    p = tmp_path / "aff5.lqt"
    write_lqt(Q, p)
    assert read_lqt(p) == Q
