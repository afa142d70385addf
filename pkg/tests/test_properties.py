"""Property-based checks over randomly assembled finite rings."""

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from blrings.axioms import check_blr1, check_blr2, check_blr21, check_blr22, check_multiplication
from blrings.ideals import enumerate_ideals
from blrings.ring_core import direct_product, dual, make_cyclic, nil2, quotient_ring
from blrings.ringspec import parse_ring

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

atoms = st.one_of(
    st.integers(1, 16).map(make_cyclic),
    st.sampled_from([2, 3]).map(nil2),
    st.sampled_from([2, 3]).map(dual),
)


@st.composite
def rings(draw, max_order=64):
    R = draw(atoms)
    while draw(st.booleans()):
        S = draw(atoms)
        if R.order * S.order > max_order:
            break
        R = direct_product(R, S)
    if draw(st.booleans()):
        L = enumerate_ideals(R)
        R, _ = quotient_ring(R, L[draw(st.integers(0, L.top))])
    return R


@SETTINGS
@given(rings(max_order=16))
def test_enumerator_matches_oracle(R):
    assert {frozenset(I.elements()) for I in enumerate_ideals(R).ideals} == oracles.all_ideals(R)


@SETTINGS
@given(rings())
def test_blr1_iff_multiplication(R):
    L = enumerate_ideals(R)
    assert check_blr1(L).holds == check_multiplication(L).holds


@SETTINGS
@given(rings())
def test_blr2_variants_agree(R):
    L = enumerate_ideals(R)
    assert check_blr2(L).holds == check_blr21(L).holds == check_blr22(L).holds


@SETTINGS
@given(rings())
def test_adjunction(R):
    L = enumerate_ideals(R)
    k = np.arange(L.size)
    # I*J <= K  iff  I <= J -> K, indexed [I, J, K]
    lhs = L.leq[L.prod[:, :, None], k[None, None, :]]
    rhs = L.leq[k[:, None, None], L.res[None, :, :]]
    assert (lhs == rhs).all()


@SETTINGS
@given(rings())
def test_double_negation_is_closure(R):
    L = enumerate_ideals(R)
    ann = L.ann
    i = np.arange(L.size)
    assert L.leq[i, ann[ann]].all()
    assert (ann[ann[ann]] == ann).all()


@SETTINGS
@given(rings(), st.data())
def test_quotient_map_is_surjective_with_kernel_I(R, data):
    L = enumerate_ideals(R)
    I = L[data.draw(st.integers(0, L.top))]
    Q, hom = quotient_ring(R, I)
    assert hom.is_surjective
    assert Q.order * len(I) == R.order
    assert np.array_equal(hom.kernel, I.members)


@SETTINGS
@given(rings(max_order=16), rings(max_order=8))
def test_unital_product_ideals_multiply(R, S):
    if R.has_unity and S.has_unity:
        assert enumerate_ideals(direct_product(R, S)).size == enumerate_ideals(R).size * enumerate_ideals(S).size


@SETTINGS
@given(st.integers(2, 30), st.integers(2, 30))
def test_cyclic_product_bl_closure(a, b):
    # every Z_n is BL, so every product of two of them must be too
    L = enumerate_ideals(direct_product(make_cyclic(a), make_cyclic(b)))
    assert check_blr1(L).holds and check_blr2(L).holds


@SETTINGS
@given(rings())
def test_label_reparses_to_same_tables(R):
    assert parse_ring(R.label).same_tables(R)
