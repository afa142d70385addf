import pytest

import oracles
from blrings.axioms import (
    CSV_COLUMNS,
    FLAG_ORDER,
    check_baer,
    check_blr1,
    check_blr2,
    check_blr3,
    check_multiplication,
    classify,
    revalidate,
)
from blrings.ideals import enumerate_ideals
from blrings.ring_core import ideal_as_ring, make_cyclic, nil2
from blrings.ringspec import parse_ring
from blrings.verdict import AxiomVerdict

ORACLE_RINGS = ["Z4", "Z6", "Z8", "Z12", "Z2xZ2", "Z2xZ4", "nil2(2)", "dual(2)", "dual(3)", "Z4xZ4/(5)"]


@pytest.mark.parametrize("spec", ORACLE_RINGS)
def test_checkers_agree_with_set_oracle(spec):
    R = parse_ring(spec)
    L = enumerate_ideals(R)
    assert check_blr1(L).holds == oracles.blr1(R)
    assert check_blr2(L).holds == oracles.blr2(R)
    assert check_multiplication(L).holds == oracles.multiplication(R)


def test_nil2_witnesses():
    R = nil2(2)
    L = enumerate_ideals(R)
    m, x, y = L.find([0, 2, 4, 6]), L.find([0, 2]), L.find([0, 4])
    v1 = check_blr1(L)
    assert v1.holds is False and v1.witness == (m, x)
    v2 = check_blr2(L)
    assert v2.holds is False and v2.witness == (x, y)
    v3 = check_blr3(L)
    assert v3.holds is False and v3.witness == (x, y)
    vm = check_multiplication(L)
    assert vm.holds is False and vm.witness == (x, m)
    for v in (v1, v2, v3, vm):
        assert revalidate(v, L)


def test_revalidate_rejects_passing_verdict():
    L = enumerate_ideals(make_cyclic(6))
    with pytest.raises(ValueError):
        revalidate(check_blr1(L), L)


def test_revalidate_detects_bogus_witness():
    L = enumerate_ideals(make_cyclic(6))
    fake = AxiomVerdict.fail("blr1", (1, 2))
    assert not revalidate(fake, L)


def test_baer_needs_unity():
    R = ideal_as_ring(make_cyclic(8), [0, 2, 4, 6])
    v = check_baer(R, enumerate_ideals(R))
    assert v.holds is None and not v.applicable


def test_failing_verdict_needs_witness():
    with pytest.raises(ValueError):
        AxiomVerdict("x", False)


def test_classify_z6():
    r = classify(make_cyclic(6))
    expect_false = {"local", "chain_ideals", "subdirectly_irreducible"}
    for k in FLAG_ORDER:
        assert r[k] is (k not in expect_false), k
    assert r.mv_center_size == 4 and r.dense_count == 1


def test_classify_z4():
    r = classify(make_cyclic(4))
    assert r.bl_ring and r["mv_ring"] and not r["godel_ring"]
    assert r["baer"] is False and r["blr3"] and not r["reduced"]
    assert r["subdirectly_irreducible"] and r.minimal_ideal_size == 2


def test_classify_z12():
    r = classify(make_cyclic(12))
    assert r.ideal_count == 6 and r.bl_ring and r["mv_ring"]
    assert not r["godel_ring"] and not r["baer"]


def test_classify_zero_ring():
    r = classify(make_cyclic(1))
    assert all(r[k] for k in FLAG_ORDER)


def test_godel_ring_example():
    r = classify(parse_ring("Z2xZ3"))
    assert r["godel_ring"] and r["mv_ring"]


def test_record_and_csv_shapes():
    r = classify(nil2(2))
    text = r.to_record()
    assert text.startswith("label: nil2(2)\norder: 8\nideal_count: 6\n")
    assert "bl_ring: false" in text
    assert "witness_blr1: [0 2 4 6] [0 2]" in text
    assert "minimal_ideal_size: n/a" in text
    row = r.csv_row()
    assert len(row) == len(CSV_COLUMNS)
    assert CSV_COLUMNS[:3] == ("label", "order", "ideal_count")
    assert CSV_COLUMNS[-2:] == ("mv_center_size", "dense_count")
    assert row[CSV_COLUMNS.index("bl_ring")] == "false"
