"""Corpus generation and the per-proposition theorem suites."""

from __future__ import annotations

import logging
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .axioms import check_blr1, check_blr2, classify, revalidate
from .errors import BLRingError
from .ideals import DEFAULT_IDEAL_CAP, annihilator, enumerate_ideals, make_ideal, to_residuated_lattice
from .ring_core import DEFAULT_ORDER_CAP, FiniteRing, RingHom, direct_product, quotient_ring
from .ringspec import parse_ring
from .spectrum import check_global_embedding, check_spectrum_props, n_of_p, prime_ideals, radical, radical_by_powers
from .structure import check_bl_algebra, check_subirr_structure, iso_search, mv_algebra, quotient_by_dense_filter
from .verdict import AxiomVerdict

log = logging.getLogger(__name__)

PROPOSITIONS = (
    "P2.2",
    "C2.3",
    "BLR2-EQ",
    "P2.8",
    "P2.9",
    "P2.10",
    "P2.11",
    "P3.1",
    "P3.3",
    "P3.4",
    "P4.1",
    "T4.2",
    "P4.3",
)

TITLES = {
    "P2.2": "BLR-1 iff multiplication ring",
    "C2.3": "BL-rings are generated by idempotents; BL-ring iff A(R) is a BL-algebra",
    "BLR2-EQ": "BLR-2, BLR-2.1 and BLR-2.2 agree",
    "P2.8": "BLR-2 iff every quotient satisfies BLR-3",
    "P2.9": "intersection of all N(P) is zero when generated by idempotents",
    "P2.10": "unital multiplication ring embeds in a product of SPIRs and fields",
    "P2.11": "BL-rings closed under finite products and quotients",
    "P3.1": "reduced unital ring: BLR-3 iff Baer",
    "P3.3": "quotients of multiplication rings are multiplication rings",
    "P3.4": "VNR is a multiplication ring; local BL criterion",
    "P4.1": "structure of subdirectly irreducible BL-rings",
    "T4.2": "subdirect representation of A(R)",
    "P4.3": "prime-ideal properties of BL-rings",
}


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------


def _default_pairs() -> tuple[tuple[str, str], ...]:
    return tuple((f"Z{a}", f"Z{b}") for a in range(2, 10) for b in range(a, 10))


@dataclass(frozen=True)
class CorpusSpec:
    max_cyclic_n: int = 36
    product_pairs: tuple[tuple[str, str], ...] = field(default_factory=_default_pairs)
    quotient_closure_depth: int = 1
    preset_rings: tuple[str, ...] = ("nil2(2)", "nil2(3)", "dual(2)", "dual(3)")
    order_cap: int = DEFAULT_ORDER_CAP

    @classmethod
    def from_specs(cls, specs, order_cap: int = DEFAULT_ORDER_CAP) -> "CorpusSpec":
        """A corpus holding exactly the listed rings."""
        return cls(max_cyclic_n=0, product_pairs=(), quotient_closure_depth=0, preset_rings=tuple(specs), order_cap=order_cap)


def _proper_nonzero_quotients(R: FiniteRing, ideal_cap: int) -> list[FiniteRing]:
    L = enumerate_ideals(R, ideal_cap)
    return [quotient_ring(R, L[i])[0] for i in range(1, L.top)]


def generate_corpus(spec: CorpusSpec | None = None, ideal_cap: int = DEFAULT_IDEAL_CAP) -> list[FiniteRing]:
    """Base rings in declaration order, then quotients by proper nonzero ideals, breadth first.

    Isomorphic duplicates are kept. Rings above ``order_cap`` are skipped
    with a logged notice.
    """
    spec = spec or CorpusSpec()
    base: list[FiniteRing] = []

    def add(text: str) -> None:
        try:
            base.append(parse_ring(text, spec.order_cap))
        except BLRingError as exc:
            log.warning("skipping %s: %s", text, exc)

    for n in range(1, spec.max_cyclic_n + 1):
        add(f"Z{n}")
    for a, b in spec.product_pairs:
        add(f"{a}x{b}")
    for text in spec.preset_rings:
        add(text)

    corpus = list(base)
    layer = base
    for _ in range(spec.quotient_closure_depth):
        layer = [Q for R in layer for Q in _proper_nonzero_quotients(R, ideal_cap)]
        corpus.extend(layer)
    return corpus


# ---------------------------------------------------------------------------
# cached per-ring computations
# ---------------------------------------------------------------------------


def _table_key(R: FiniteRing) -> bytes:
    return b"|".join((np.int64(R.order).tobytes(), R.add.tobytes(), R.mul.tobytes(), np.int64(R.zero).tobytes()))


@dataclass(frozen=True)
class QuotientEntry:
    ideal: int
    profile: "RingProfile"
    hom: RingHom


class RingProfile:
    """Lazily computed facts about one ring, shared through a :class:`ProfileCache`."""

    def __init__(self, ring: FiniteRing, cache: "ProfileCache"):
        self.ring = ring
        self.cache = cache

    @cached_property
    def lattice(self):
        return enumerate_ideals(self.ring, self.cache.ideal_cap)

    @cached_property
    def report(self):
        return classify(self.ring, self.cache.ideal_cap, self.lattice)

    @property
    def bl(self) -> bool:
        return self.report.bl_ring

    @cached_property
    def quotients(self) -> list[QuotientEntry]:
        out = []
        for i in range(self.lattice.size):
            Q, hom = quotient_ring(self.ring, self.lattice[i])
            out.append(QuotientEntry(i, self.cache.get(Q), hom))
        return out

    @cached_property
    def residuated(self):
        return to_residuated_lattice(self.lattice)

    @cached_property
    def structure(self):
        return check_subirr_structure(self.ring, self.lattice, self.bl)

    @cached_property
    def spectrum_items(self) -> list[AxiomVerdict]:
        return check_spectrum_props(self.ring, self.lattice, self.bl, self.report["local"])

    @cached_property
    def embedding(self) -> list[AxiomVerdict]:
        return check_global_embedding(self.ring, self.lattice, self.report["multiplication"])


class ProfileCache:
    """Profiles keyed by the ring's tables, so equal quotients are computed once."""

    def __init__(self, ideal_cap: int = DEFAULT_IDEAL_CAP):
        self.ideal_cap = ideal_cap
        self._profiles: dict[bytes, RingProfile] = {}
        self._lock = threading.Lock()

    def get(self, R: FiniteRing) -> RingProfile:
        key = _table_key(R)
        with self._lock:
            p = self._profiles.get(key)
            if p is None:
                p = self._profiles[key] = RingProfile(R, self)
            return p

    def __len__(self) -> int:
        return len(self._profiles)


# ---------------------------------------------------------------------------
# theorem runs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    ring: str
    check: str
    witness: tuple
    revalidated: bool | None = None  # None when no set-level recheck exists

    def render(self) -> str:
        state = {True: "revalidated", False: "NOT revalidated", None: "no recheck"}[self.revalidated]
        return f"{self.ring}: {self.check} witness={list(self.witness)} [{state}]"


@dataclass
class TheoremRun:
    prop: str
    rings: list[str] = field(default_factory=list)
    skipped: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def title(self) -> str:
        return TITLES.get(self.prop, "")

    def render(self) -> str:
        state = "pass" if self.passed else "FAIL"
        lines = [f"{self.prop}: {state} tested={len(self.rings)} not_applicable={self.skipped} failures={len(self.failures)} ({self.title})"]
        lines += [f"  {f.render()}" for f in self.failures]
        return "\n".join(lines)


def _fail_verdict(run: TheoremRun, label: str, v: AxiomVerdict, lattice, check: str | None = None) -> None:
    try:
        ok = revalidate(v, lattice)
    except ValueError:
        ok = None
    run.failures.append(Failure(label, check or v.name, v.witness or (), ok))


def _p2_2(items, run):
    for label, P in items:
        run.rings.append(label)
        v1 = P.report.verdicts["blr1"]
        vm = P.report.verdicts["multiplication"]
        if v1.holds != vm.holds:
            bad = v1 if v1.holds is False else vm
            _fail_verdict(run, label, bad, P.lattice, f"blr1={v1.holds} multiplication={vm.holds}: {bad.name}")


def _c2_3(items, run):
    for label, P in items:
        run.rings.append(label)
        r = P.report
        if r.bl_ring and not r["generated_by_idempotents"]:
            R = P.ring
            x = next(x for x in range(R.order) if not any(R.mul[x, e] == x for e in R.idempotents))
            run.failures.append(Failure(label, "bl_ring without idempotent cover", (x,), True))
        abstract = check_bl_algebra(P.residuated)
        if bool(abstract.holds) != r.bl_ring:
            run.failures.append(Failure(label, f"bl_ring={r.bl_ring} but A(R) BL-algebra={abstract.holds}", abstract.witness or ()))


def _blr2_eq(items, run):
    for label, P in items:
        run.rings.append(label)
        vs = [P.report.verdicts[k] for k in ("blr2", "blr21", "blr22")]
        if len({v.holds for v in vs}) > 1:
            bad = next(v for v in vs if v.holds is False)
            _fail_verdict(run, label, bad, P.lattice, "disagreement: " + " ".join(f"{v.name}={v.holds}" for v in vs))


def _p2_8(items, run):
    for label, P in items:
        run.rings.append(label)
        blr2 = bool(P.report["blr2"])
        failing = next((q for q in P.quotients if not q.profile.report["blr3"]), None)
        if blr2 != (failing is None):
            if failing is not None:
                v = failing.profile.report.verdicts["blr3"]
                _fail_verdict(run, label, v, failing.profile.lattice, f"blr2=true but R/I{failing.ideal} fails blr3")
            else:
                _fail_verdict(run, label, P.report.verdicts["blr2"], P.lattice, "blr2=false but every quotient satisfies blr3")


def _p2_9(items, run):
    for label, P in items:
        v = P.embedding[0]
        if v.holds is None:
            run.skipped += 1
            continue
        run.rings.append(label)
        if not v.holds:
            run.failures.append(Failure(label, "N(P)_meet_zero", v.witness, _recheck_np(P, v.witness[0])))


def _recheck_np(P: RingProfile, x: int) -> bool:
    R, L = P.ring, P.lattice
    return all(
        bool((R.mul[x, ~L[p].members] == R.zero).any()) for p in prime_ideals(L).primes
    )


def _p2_10(items, run):
    for label, P in items:
        v = P.embedding[1]
        if v.holds is None:
            run.skipped += 1
            continue
        run.rings.append(label)
        if not v.holds:
            run.failures.append(Failure(label, f"embedding: {v.note}", v.witness))


def _bl_verdicts(R: FiniteRing, ideal_cap: int):
    L = enumerate_ideals(R, ideal_cap)
    return L, [v for v in (check_blr1(L), check_blr2(L)) if not v.holds]


def _p2_11(items, run, cache: ProfileCache, pair_samples: int, pair_order_cap: int, seed: int):
    bl = [(label, P) for label, P in items if P.bl]
    eligible = [(i, j) for i in range(len(bl)) for j in range(len(bl)) if bl[i][1].ring.order * bl[j][1].ring.order <= pair_order_cap]
    rng = random.Random(seed)
    pairs = rng.sample(eligible, min(pair_samples, len(eligible)))
    for i, j in pairs:
        (la, A), (lb, B) = bl[i], bl[j]
        prod = direct_product(A.ring, B.ring, pair_order_cap)
        run.rings.append(prod.label)
        L, bad = _bl_verdicts(prod, cache.ideal_cap)
        for v in bad:
            _fail_verdict(run, prod.label, v, L, f"product not BL: {v.name}")
    for label, P in bl:
        run.rings.append(label)
        for q in P.quotients:
            if not q.profile.bl:
                v = next(v for v in (q.profile.report.verdicts["blr1"], q.profile.report.verdicts["blr2"]) if not v.holds)
                _fail_verdict(run, f"{label} / I{q.ideal}", v, q.profile.lattice, f"quotient not BL: {v.name}")


def _p3_1(items, run):
    for label, P in items:
        R, r = P.ring, P.report
        if not (R.has_unity and r["reduced"]):
            run.skipped += 1
            continue
        run.rings.append(label)
        if r["blr3"] != r["baer"]:
            bad = r.verdicts["blr3"] if not r["blr3"] else r.verdicts["baer"]
            _fail_verdict(run, label, bad, P.lattice, f"blr3={r['blr3']} baer={r['baer']}")


def _p3_3(items, run):
    for label, P in items:
        if not P.report["multiplication"]:
            run.skipped += 1
            continue
        run.rings.append(label)
        for q in P.quotients:
            if not q.profile.report["multiplication"]:
                v = q.profile.report.verdicts["multiplication"]
                _fail_verdict(run, f"{label} / I{q.ideal}", v, q.profile.lattice, "quotient not a multiplication ring")


def _p3_4(items, run):
    for label, P in items:
        R, r, L = P.ring, P.report, P.lattice
        if not (r["vnr"] and R.has_unity):
            run.skipped += 1
            continue
        run.rings.append(label)
        if not r["multiplication"]:
            _fail_verdict(run, label, r.verdicts["multiplication"], L, "VNR but not a multiplication ring")
        # I_P = 0 iff I <= N(P); I_P = R_P iff I is not inside P
        primes = prime_ideals(L).primes
        crit = True
        for p in primes:
            N = n_of_p(R, L[p], L).members
            zero_loc = [(~L[i].members | N).all() for i in range(L.size)]
            for i in range(L.size):
                for j in range(L.size):
                    if zero_loc[i] and zero_loc[j] and L.leq[L.res[i, j], p]:
                        crit = False
        if crit != r.bl_ring:
            run.failures.append(Failure(label, f"local criterion={crit} but bl_ring={r.bl_ring}", ()))


def _p4_1(items, run):
    for label, P in items:
        if not P.bl:
            run.skipped += 1
            continue
        run.rings.append(label)
        L = P.lattice
        # double negation is a closure operator
        ann = L.ann
        for i in range(L.size):
            if not L.leq[i, ann[ann[i]]] or ann[ann[ann[i]]] != ann[i]:
                run.failures.append(Failure(label, "double negation not a closure", (i,), annihilator(annihilator(L[i])) >= L[i]))
        A = P.residuated
        if iso_search(quotient_by_dense_filter(A), mv_algebra(A)) is None:
            run.failures.append(Failure(label, "A(R)/D(R) not isomorphic to MV(R)", ()))
        s = P.structure
        if not s.applicable:
            continue
        if not s.mv_is_chain:
            run.failures.append(Failure(label, "MV-center not a chain", s.mv_center))
        for v in s.items:
            if not v.holds:
                run.failures.append(Failure(label, v.name, v.witness))
        if not s.ordinal_sum_iso:
            run.failures.append(Failure(label, "A(R) not isomorphic to MV(R) + D(R)", ()))
        if not s.quotient_iso_mv:
            run.failures.append(Failure(label, "A(R)/D(R) not isomorphic to MV(R)", ()))


def subdirect_family(L) -> list[int]:
    """Minimal completely meet-irreducible ideals: their quotients are subdirectly irreducible."""
    cmi = []
    for i in range(L.size):
        if i == L.top:
            continue
        m = L.top
        for j in range(L.size):
            if j != i and L.leq[i, j]:
                m = int(L.meet[m, j])
        if m != i:
            cmi.append(i)
    return [i for i in cmi if not any(j != i and L.leq[j, i] for j in cmi)]


def theta_table(P: RingProfile, family: list[int]) -> np.ndarray:
    """``theta[J, t]`` = index of ``(J + I_t) / I_t`` in the ideal lattice of ``R / I_t``."""
    L = P.lattice
    theta = np.empty((L.size, len(family)), dtype=np.int64)
    for t, i in enumerate(family):
        q = P.quotients[i]
        Q, QL = q.profile.ring, q.profile.lattice
        for j in range(L.size):
            img = np.zeros(Q.order, dtype=np.bool_)
            img[q.hom.map[L[j].members]] = True
            theta[j, t] = QL.index(make_ideal(Q, img))
    return theta


def _t4_2(items, run):
    for label, P in items:
        if not P.bl or P.ring.is_zero_ring:
            run.skipped += 1
            continue
        L = P.lattice
        fam = subdirect_family(L)
        if len(fam) < 2:
            run.skipped += 1
            continue
        run.rings.append(label)
        m = L.top
        for i in fam:
            m = int(L.meet[m, i])
        if m != L.zero:
            run.failures.append(Failure(label, "family does not meet in zero", tuple(fam)))
        for i in fam:
            q = P.quotients[i].profile
            s = q.structure
            if not (q.bl and s.applicable and s.holds):
                run.failures.append(Failure(label, f"R/I{i} is not a subdirectly irreducible BL-ring with A = MV + D", (i,)))
        theta = theta_table(P, fam)
        qls = [P.quotients[i].profile.lattice for i in fam]
        for t, QL in enumerate(qls):
            col = theta[:, t]
            if col[L.zero] != QL.zero or col[L.top] != QL.top:
                run.failures.append(Failure(label, f"theta misses constants in factor {t}", (fam[t],)))
            if len(set(col.tolist())) != QL.size:
                run.failures.append(Failure(label, f"theta not onto factor {t}", (fam[t],)))
            for name, src, dst in (("meet", L.meet, QL.meet), ("sum", L.sum, QL.sum), ("product", L.prod, QL.prod), ("residuum", L.res, QL.res)):
                bad = np.argwhere(col[src] != dst[col[:, None], col[None, :]])
                if bad.size:
                    a, b = (int(x) for x in bad[0])
                    run.failures.append(Failure(label, f"theta does not preserve {name} in factor {t}", (a, b, fam[t])))
        rows = {tuple(r) for r in theta.tolist()}
        if len(rows) != L.size:
            run.failures.append(Failure(label, "theta not injective", tuple(fam)))


def _p4_3(items, run):
    for label, P in items:
        R, L = P.ring, P.lattice
        for i in range(L.size):
            if radical(L[i], L) != radical_by_powers(R, L[i]):
                run.failures.append(Failure(label, "radical via primes differs from powers oracle", (i,)))
        if not (P.bl and R.has_unity):
            run.skipped += 1
            continue
        run.rings.append(label)
        for v in P.spectrum_items:
            if v.holds is False:
                run.failures.append(Failure(label, f"{v.name}{' ' + v.note if v.note else ''}", v.witness))


@dataclass
class SuiteConfig:
    ideal_cap: int = DEFAULT_IDEAL_CAP
    threads: int = 1
    pair_samples: int = 50
    pair_order_cap: int = 256
    seed: int = 0


def _prefetch(P: RingProfile, props: set[str]) -> None:
    P.report
    if props & {"P2.8", "P2.11", "P3.3", "T4.2"}:
        for q in P.quotients:
            q.profile.report
    if props & {"P2.9", "P2.10"}:
        P.embedding
    if P.bl and props & {"P4.1", "T4.2"}:
        P.structure
    if P.bl and "P4.3" in props:
        P.spectrum_items


def run_theorem_suite(corpus: list[FiniteRing], props=None, config: SuiteConfig | None = None, cache: ProfileCache | None = None) -> list[TheoremRun]:
    """Run the selected theorem checks over ``corpus``; output order never depends on threading."""
    if not corpus:
        raise ValueError("corpus is empty")
    config = config or SuiteConfig()
    props = tuple(PROPOSITIONS if props is None else props)
    unknown = [p for p in props if p not in PROPOSITIONS]
    if unknown:
        raise ValueError(f"unknown proposition id {unknown[0]!r}; known: {', '.join(PROPOSITIONS)}")
    cache = cache or ProfileCache(config.ideal_cap)
    profiles = [cache.get(R) for R in corpus]
    items = [(R.label, P) for R, P in zip(corpus, profiles)]
    wanted = set(props)
    if config.threads > 1:
        with ThreadPoolExecutor(config.threads) as pool:
            list(pool.map(lambda P: _prefetch(P, wanted), profiles))
    else:
        for P in profiles:
            _prefetch(P, wanted)

    runs = {p: TheoremRun(p) for p in props}
    simple = {
        "P2.2": _p2_2,
        "C2.3": _c2_3,
        "BLR2-EQ": _blr2_eq,
        "P2.8": _p2_8,
        "P2.9": _p2_9,
        "P2.10": _p2_10,
        "P3.1": _p3_1,
        "P3.3": _p3_3,
        "P3.4": _p3_4,
        "P4.1": _p4_1,
        "T4.2": _t4_2,
        "P4.3": _p4_3,
    }
    for p in props:
        if p in simple:
            simple[p](items, runs[p])
        elif p == "P2.11":
            _p2_11(items, runs[p], cache, config.pair_samples, config.pair_order_cap, config.seed)
    return [runs[p] for p in props]


def render_runs(runs: list[TheoremRun]) -> str:
    failed = sum(not r.passed for r in runs)
    body = "\n".join(r.render() for r in runs)
    return f"{body}\nsummary: {len(runs) - failed}/{len(runs)} propositions pass\n"
