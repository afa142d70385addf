"""Acceptance criteria, one test per criterion.

Each test records a one-line pass/fail verdict that is printed in the
pytest terminal summary (and directly when run as a script).
"""

import os
import subprocess
import sys
import time

import pytest
from conftest import ACCEPTANCE_LINES

from blrings.harness import CorpusSpec, ProfileCache, SuiteConfig, generate_corpus, run_theorem_suite
from blrings.axioms import classify, revalidate
from blrings.ideals import (
    annihilator,
    enumerate_ideals,
    ideal_generated,
    ideals_by_subset_filter,
    residuum,
    to_residuated_lattice,
)
from blrings.ring_core import are_isomorphic, make_cyclic, nil2
from blrings.ringspec import parse_ring
from blrings.spectrum import check_spectrum_props, decompose, n_of_p
from blrings.structure import iso_search, lukasiewicz_chain, mv_algebra


def record(n, ok, detail, status="pass"):
    line = f"criterion {n}: {status if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _elems(I):
    return set(I.elements())


def test_criterion_01_blr1_iff_multiplication():
    t0 = time.perf_counter()
    corpus = generate_corpus(CorpusSpec())
    (run,) = run_theorem_suite(corpus, ["P2.2"], SuiteConfig(threads=4), ProfileCache())
    elapsed = time.perf_counter() - t0
    cyclic_max = max(R.order for R in corpus if R.label[1:].isdigit())
    ok = (
        run.passed
        and len(run.rings) == len(corpus) >= 200
        and cyclic_max <= 36
        and max(R.order for R in corpus) <= 81
        and elapsed < 60
    )
    record(1, ok, f"{len(run.rings)} rings agree, {len(run.failures)} disagreements, {elapsed:.1f}s")


def test_criterion_02_blr2_variants(default_corpus, default_runs):
    run = default_runs["BLR2-EQ"]
    ok = run.passed and len(run.rings) == len(default_corpus)
    record(2, ok, f"BLR-2/2.1/2.2 agree on {len(run.rings)}/{len(default_corpus)} rings")


def test_criterion_03_bl_rings_idempotent_generated(default_corpus, default_runs, profile_cache):
    bl = [R for R in default_corpus if profile_cache.get(R).bl]
    bad = [R.label for R in bl if not profile_cache.get(R).report["generated_by_idempotents"]]
    ok = default_runs["C2.3"].passed and not bad
    record(3, ok, f"{len(bl)} BL-rings, {len(bad)} not generated by idempotents")


def test_criterion_04_blr2_iff_quotients_blr3(default_corpus, default_runs, profile_cache):
    run = default_runs["P2.8"]
    quotients = sum(len(profile_cache.get(R).quotients) for R in default_corpus)
    ok = run.passed and len(run.rings) == len(default_corpus)
    record(4, ok, f"{len(run.rings)} rings, {quotients} quotients checked, {len(run.failures)} failures")


def test_criterion_05_np_meet_zero(default_runs):
    R = make_cyclic(12)
    L = enumerate_ideals(R)
    meet = _elems(n_of_p(R, ideal_generated(R, [2]), L)) & _elems(n_of_p(R, ideal_generated(R, [3]), L))
    run = default_runs["P2.9"]
    ok = run.passed and meet == {0}
    record(5, ok, f"{len(run.rings)} idempotent-generated rings; Z12: 4Z12 & 3Z12 = {sorted(meet)}")


def test_criterion_06_bl_closure(default_runs):
    run = default_runs["P2.11"]
    products = [label for label in run.rings if "x" in label and "/" not in label]
    ok = run.passed and len(products) >= 50
    record(6, ok, f"{len(run.rings)} products and quotient families checked, {len(run.failures)} failures")


def test_criterion_07_reduced_blr3_iff_baer(default_corpus, default_runs, profile_cache):
    run = default_runs["P3.1"]
    z6, z4 = classify(make_cyclic(6)), classify(make_cyclic(4))
    z6_ok = z6["reduced"] and z6["blr3"] and z6["baer"]
    z4_ok = not z4["reduced"] and z4["baer"] is False
    ok = run.passed and len(run.rings) > 0 and z6_ok and z4_ok
    record(
        7,
        ok,
        f"blr3 == baer on {len(run.rings)} reduced unital rings; Z6 both true; Z4 non-reduced, baer false; "
        "reduced non-example unattainable (see xfail below)",
        status="partial",
    )


@pytest.mark.xfail(strict=True, reason="a finite reduced unital ring is a product of fields, hence Baer and BLR-3")
def test_criterion_07_reduced_non_example_exists(default_corpus, profile_cache):
    found = [
        R.label
        for R in default_corpus
        if R.has_unity and profile_cache.get(R).report["reduced"] and not profile_cache.get(R).report["blr3"]
    ]
    assert found


def test_criterion_08_vnr_multiplication(default_corpus, default_runs, profile_cache):
    run = default_runs["P3.4"]
    fields = [parse_ring(s) for s in ("Z2xZ3", "Z30", "Z5xZ7", "Z2xZ2")]
    ok = run.passed and all(classify(R)["vnr"] and classify(R)["multiplication"] for R in fields)
    record(8, ok, f"{len(run.rings)} VNR rings, all multiplication rings")


def test_criterion_09_subdirectly_irreducible_structure(default_corpus, default_runs, profile_cache):
    run = default_runs["P4.1"]
    prime_powers = [f"Z{p**k}" for p in (2, 3, 5) for k in range(1, 6) if p**k <= 36]
    labels = {R.label for R in default_corpus}
    si = [R for R in default_corpus if profile_cache.get(R).bl and profile_cache.get(R).structure.applicable]
    z8 = profile_cache.get(make_cyclic(8))
    A8 = to_residuated_lattice(z8.lattice)
    z8_ok = z8.report.mv_center_size == 4 and iso_search(mv_algebra(A8), lukasiewicz_chain(4)) is not None
    ok = run.passed and set(prime_powers) <= labels and z8_ok
    record(9, ok, f"{len(si)} SI BL-rings pass all items; Z8 MV-center is L4 (size {z8.report.mv_center_size})")


def test_criterion_10_prime_properties(default_runs):
    run = default_runs["P4.3"]
    z12 = make_cyclic(12)
    factors = [S for _, S in decompose(z12)]
    z12_ok = len(factors) == 2 and {are_isomorphic(S, make_cyclic(4)) or are_isomorphic(S, make_cyclic(3)) for S in factors} == {True}
    z12_ok = z12_ok and sorted(S.order for S in factors) == [3, 4]
    z12_ok = z12_ok and all(enumerate_ideals(S).is_chain() for S in factors)
    z8 = make_cyclic(8)
    L8 = enumerate_ideals(z8)
    m = L8.find([0, 2, 4, 6])
    powers, p = {L8.top}, L8.top
    for _ in range(L8.size):
        p = int(L8.prod[p, m])
        powers.add(p)
    z8_ok = powers == set(range(L8.size)) and all(v.holds for v in check_spectrum_props(z8, L8))
    ok = run.passed and z12_ok and z8_ok
    record(10, ok, f"items (i)-(viii) on {len(run.rings)} unital BL-rings; Z12 = Z4 x Z3; Z8 ideals are powers of 2Z8")


def test_criterion_11_nil2_witnesses():
    R = nil2(2)
    rep = classify(R)
    L = rep.lattice
    m, x, y = L.find([0, 2, 4, 6]), L.find([0, 2]), L.find([0, 4])
    v = rep.verdicts
    shapes = (
        v["blr1"].witness == (m, x)
        and v["blr2"].witness == (x, y)
        and v["blr3"].holds is False
        and v["multiplication"].holds is False
    )
    all_false = all(v[k].holds is False for k in ("blr1", "blr2", "blr3", "multiplication"))
    revalid = all(revalidate(v[k], L) for k in ("blr1", "blr2", "blr3", "multiplication"))
    ok = shapes and all_false and revalid
    w = rep.witnesses()
    record(11, ok, f"blr1 {w['blr1']}, blr2 {w['blr2']}, blr3 {w['blr3']}, multiplication {w['multiplication']}")


def test_criterion_12_point_values():
    R = make_cyclic(12)
    res = residuum(ideal_generated(R, [4]), ideal_generated(R, [6])).elements()
    ann = annihilator(ideal_generated(R, [2])).elements()
    n12, nnil = enumerate_ideals(R).size, enumerate_ideals(nil2(2)).size
    ok = res == (0, 3, 6, 9) and ann == (0, 6) and n12 == 6 and nnil == 6
    record(12, ok, f"4Z12->6Z12 = {list(res)}, ann(2Z12) = {list(ann)}, |A(Z12)| = {n12}, |A(nil2(2))| = {nnil}")


def test_criterion_13_subset_oracle(default_corpus, profile_cache):
    small = [R for R in default_corpus if R.order <= 16]
    bad = [
        R.label
        for R in small
        if {I.key for I in profile_cache.get(R).lattice.ideals} != {I.key for I in ideals_by_subset_filter(R)}
    ]
    ok = not bad and len(small) > 0
    record(13, ok, f"{len(small)} rings of order <= 16 match the subset oracle; mismatches: {bad}")


def test_criterion_14_verify_is_deterministic():
    cmd = [sys.executable, "-m", "blrings.cli", "verify", "--threads", "4"]
    outs = [subprocess.run(cmd, capture_output=True, env=dict(os.environ), check=False) for _ in range(2)]
    ok = outs[0].stdout == outs[1].stdout and outs[0].returncode == outs[1].returncode == 0 and len(outs[0].stdout) > 0
    record(14, ok, f"two verify runs, {len(outs[0].stdout)} bytes each, identical={outs[0].stdout == outs[1].stdout}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
