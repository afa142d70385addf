import pytest

from blrings.errors import RingSpecError
from blrings.ring_core import are_isomorphic, direct_product, make_cyclic
from blrings.ringspec import dump_table_file, load_ring, load_table_file, parse_ring, read_corpus_file


@pytest.mark.parametrize(
    "text, order, label",
    [
        ("Z12", 12, "Z12"),
        ("  Z4 x Z3 ", 12, "Z4xZ3"),
        ("nil2(2)", 8, "nil2(2)"),
        ("dual(3)", 9, "dual(3)"),
        ("Z12/(4)", 4, "Z12/(4)"),
        ("Z12/(16)", 4, "Z12/(4)"),
        ("Z2x(Z3xZ5)", 30, "Z2x(Z3xZ5)"),
        ("(Z4xZ2)/(2)", 2, "(Z4xZ2)/(2)"),  # index 2 is (1, 0)
    ],
)
def test_parse(text, order, label):
    R = parse_ring(text)
    assert R.order == order and R.label == label


def test_quotient_binds_tighter_than_product():
    R = parse_ring("Z4xZ6/(2)")
    assert R.order == 8
    assert are_isomorphic(R, direct_product(make_cyclic(4), make_cyclic(2)))


def test_residues_reduced_mod_n():
    assert parse_ring("Z10/(12)").order == 2


def test_empty_generator_list_is_zero_ideal():
    assert parse_ring("Z6/()").order == 6


@pytest.mark.parametrize(
    "text, pos",
    [
        ("Z", 1),
        ("Q5", 0),
        ("Z4xx", 3),
        ("Z4/(2", 5),
        ("(Z4", 3),
        ("Z4 Z5", 3),
        ("nil2(4)", 0),
        ("Z0", 0),
    ],
)
def test_errors_report_position(text, pos):
    with pytest.raises(RingSpecError) as err:
        parse_ring(text)
    assert err.value.position == pos
    assert "^" in str(err.value)


def test_generator_outside_ring():
    with pytest.raises(RingSpecError, match="outside"):
        parse_ring("(Z2xZ2)/(7)")


def test_order_cap():
    with pytest.raises(RingSpecError, match="cap"):
        parse_ring("Z50xZ50", order_cap=1000)
    with pytest.raises(RingSpecError, match="cap"):
        parse_ring("nil2(11)", order_cap=1000)


def test_table_file_roundtrip(tmp_path):
    R = parse_ring("Z2xZ4")
    path = tmp_path / "r.tbl"
    path.write_text(dump_table_file(R))
    S = load_table_file(path)
    assert S.same_tables(R) and S.unity == R.unity and S.label == "r"
    assert load_ring(str(path)).same_tables(R)


def test_table_file_bad_header(tmp_path):
    path = tmp_path / "bad.tbl"
    path.write_text("size 2\n0 1\n1 0\n0 0\n0 1\n")
    with pytest.raises(RingSpecError):
        load_table_file(path)


def test_table_file_wrong_count(tmp_path):
    path = tmp_path / "short.tbl"
    path.write_text("order 2\n0 1\n1 0\n0 0\n")
    with pytest.raises(RingSpecError, match="expected 8"):
        load_table_file(path)


def test_corpus_file_comments(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("# header\nZ4\n\nnil2(2)  # witness\n")
    assert read_corpus_file(path) == ["Z4", "nil2(2)"]
