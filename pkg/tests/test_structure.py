import pytest

import oracles
from blrings.errors import InconclusiveSearch, LatticeError, NotBLError
from blrings.ideals import enumerate_ideals, to_residuated_lattice
from blrings.ring_core import make_cyclic
from blrings.ringspec import parse_ring
from blrings.structure import (
    FiniteResiduatedLattice,
    check_bl_algebra,
    check_mv_algebra,
    check_subirr_structure,
    dense_algebra,
    godel_chain,
    is_subdirectly_irreducible,
    iso_search,
    lukasiewicz_chain,
    mv_algebra,
    mv_center,
    ordinal_sum,
    quotient_by_dense_filter,
)


def A(spec):
    return to_residuated_lattice(enumerate_ideals(parse_ring(spec)))


@pytest.mark.parametrize("k", range(2, 8))
def test_lukasiewicz_tables(k):
    L = lukasiewicz_chain(k)
    times, res = oracles.lukasiewicz(k)
    assert L.times.tolist() == times and L.residuum.tolist() == res
    assert L.label == f"L{k}"
    assert check_mv_algebra(L).holds and check_bl_algebra(L).holds


@pytest.mark.parametrize("k", range(2, 7))
def test_godel_chain_is_bl_not_mv(k):
    G = godel_chain(k)
    assert check_bl_algebra(G).holds
    assert check_mv_algebra(G).holds is (k == 2)
    assert (G.times == G.meet).all()


def test_validation_rejects_broken_adjunction():
    L = lukasiewicz_chain(3)
    bad = L.residuum.copy()
    bad[2, 0] = 2
    with pytest.raises(LatticeError, match="adjunction"):
        FiniteResiduatedLattice(L.leq, L.meet, L.join, L.times, bad, L.bottom, L.top)


def test_z4_is_l3_and_z8_is_l4():
    assert iso_search(A("Z4"), lukasiewicz_chain(3)) is not None
    assert iso_search(A("Z8"), lukasiewicz_chain(4)) is not None
    assert iso_search(A("Z8"), godel_chain(4)) is None


def test_ordinal_sum_sizes_and_shape():
    S = ordinal_sum(lukasiewicz_chain(2), lukasiewicz_chain(2))
    assert S.size == 3 and S.is_chain()
    assert iso_search(S, godel_chain(3)) is not None
    assert iso_search(S, lukasiewicz_chain(3)) is None


@pytest.mark.parametrize("a, b", [(2, 2), (3, 2), (4, 3), (5, 5)])
def test_ordinal_sum_of_chains_is_bl(a, b):
    S = ordinal_sum(lukasiewicz_chain(a), lukasiewicz_chain(b))
    assert S.size == a + b - 1
    assert check_bl_algebra(S).holds


def test_ordinal_sum_with_bl_upper_block():
    S = ordinal_sum(lukasiewicz_chain(3), godel_chain(3))
    assert check_bl_algebra(S).holds and not check_mv_algebra(S).holds


def test_quotient_by_dense_filter_of_sum():
    S = ordinal_sum(lukasiewicz_chain(3), lukasiewicz_chain(2))
    assert iso_search(quotient_by_dense_filter(S), lukasiewicz_chain(3)) is not None


def test_quotient_rejects_non_bl_algebra():
    L = A("nil2(2)")
    assert not check_bl_algebra(L).holds
    with pytest.raises(NotBLError):
        quotient_by_dense_filter(L)


def test_mv_center_of_z8():
    rep = mv_center(A("Z8"))
    assert len(rep.mv_center) == 4 and rep.mv_is_chain and rep.lukasiewicz_rank == 4
    assert iso_search(mv_algebra(A("Z8")), lukasiewicz_chain(4)) is not None


def test_dense_algebra_of_z8():
    D = dense_algebra(A("Z8"))
    assert D.size == 1


@pytest.mark.parametrize("spec, rank", [("Z8", 4), ("Z9", 3), ("Z27", 4), ("Z32", 6), ("Z25", 3), ("dual(3)", 3)])
def test_subirr_structure_holds(spec, rank):
    R = parse_ring(spec)
    L = enumerate_ideals(R)
    s = check_subirr_structure(R, L)
    assert s.applicable and s.holds
    assert s.lukasiewicz_rank == rank
    assert s.ordinal_sum_iso and s.quotient_iso_mv


def test_subirr_not_applicable():
    R = make_cyclic(6)
    s = check_subirr_structure(R, enumerate_ideals(R))
    assert not s.applicable and s.holds is None
    assert is_subdirectly_irreducible(R, enumerate_ideals(R)) is None


def test_subirr_minimal_ideal_of_z8():
    R = make_cyclic(8)
    assert is_subdirectly_irreducible(R, enumerate_ideals(R)).elements() == (0, 4)


def test_iso_search_budget():
    L = A("Z2xZ3xZ5")
    assert iso_search(L, L) is not None
    with pytest.raises(InconclusiveSearch):
        iso_search(L, L, limit=0)


def test_dump_format():
    text = lukasiewicz_chain(3).dump()
    lines = text.splitlines()
    assert lines[:4] == ["algebra L3", "size 3", "bottom 0", "top 2"]
    assert lines[-2:] == ["negation:", "2 1 0"]
