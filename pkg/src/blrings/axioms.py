"""Ring-class predicates decided on the ideal lattice, and the per-ring report."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ideals import (
    DEFAULT_IDEAL_CAP,
    IdealLattice,
    annihilator,
    enumerate_ideals,
    ideal_generated,
    ideal_intersection,
    ideal_product,
    ideal_sum,
    residuum,
    to_residuated_lattice,
)
from .ring_core import FiniteRing, ring_flags
from .structure import is_subdirectly_irreducible, mv_center
from .verdict import AxiomVerdict, first_pair


def _verdict(name: str, mask: np.ndarray, note: str = "") -> AxiomVerdict:
    w = first_pair(mask)
    return AxiomVerdict.ok(name) if w is None else AxiomVerdict.fail(name, w, note)


def check_blr1(L: IdealLattice) -> AxiomVerdict:
    """``I & J == I * (I -> J)`` for every pair; witness ``(I, J)``."""
    i = np.arange(L.size)[:, None]
    return _verdict("blr1", L.meet == L.prod[i, L.res])


def check_blr2(L: IdealLattice) -> AxiomVerdict:
    """``(I -> J) + (J -> I) == R`` for every pair."""
    return _verdict("blr2", L.sum[L.res, L.res.T] == L.top)


def check_blr21(L: IdealLattice) -> AxiomVerdict:
    """``(I & J) -> K == (I -> K) + (J -> K)``; witness ``(I, J, K)``."""
    r = L.res
    k = np.arange(L.size)[None, None, :]
    lhs = r[L.meet[:, :, None], k]
    rhs = L.sum[r[:, None, :], r[None, :, :]]
    return _verdict("blr21", lhs == rhs)


def check_blr22(L: IdealLattice) -> AxiomVerdict:
    """``I -> (J + K) == (I -> J) + (I -> K)``; witness ``(I, J, K)``."""
    r = L.res
    i = np.arange(L.size)[:, None, None]
    lhs = r[i, L.sum[None, :, :]]
    rhs = L.sum[r[:, :, None], r[:, None, :]]
    return _verdict("blr22", lhs == rhs)


def check_blr3(L: IdealLattice) -> AxiomVerdict:
    """``I & J == 0`` implies ``I* + J* == R``."""
    disjoint = L.meet == L.zero
    return _verdict("blr3", ~disjoint | (L.sum[L.ann[:, None], L.ann[None, :]] == L.top))


def check_multiplication(L: IdealLattice) -> AxiomVerdict:
    """Every ``I <= J`` has some ideal ``K`` with ``I == J * K`` (exhaustive over K).

    Deliberately does not try ``K = J -> I`` first: agreement with
    :func:`check_blr1` is a theorem under test, not an implementation shortcut.
    """
    for j in range(L.size):
        reachable = set(L.prod[j].tolist())
        for i in range(L.size):
            if L.leq[i, j] and i not in reachable:
                return AxiomVerdict.fail("multiplication", (i, j))
    return AxiomVerdict.ok("multiplication")


def idempotent_ideals(R: FiniteRing, L: IdealLattice) -> dict[int, int]:
    """Map ideal index -> least idempotent ``e`` with that ideal equal to ``eR``."""
    out: dict[int, int] = {}
    for e in R.idempotents:
        out.setdefault(L.index(ideal_generated(R, (e,))), e)
    return out


def check_baer(R: FiniteRing, L: IdealLattice) -> AxiomVerdict:
    """Every annihilator ``I*`` equals ``eR`` for an idempotent ``e``; n/a without unity."""
    if not R.has_unity:
        return AxiomVerdict.not_applicable("baer", "ring has no identity")
    principal = idempotent_ideals(R, L)
    bad = next((i for i in range(L.size) if int(L.ann[i]) not in principal), None)
    return AxiomVerdict.ok("baer") if bad is None else AxiomVerdict.fail("baer", (bad,))


def _bl_prefix(L: IdealLattice, name: str) -> AxiomVerdict | None:
    for v in (check_blr1(L), check_blr2(L)):
        if not v.holds:
            return AxiomVerdict(name, False, v.witness, f"{v.name} fails")
    return None


def check_mv_ring(L: IdealLattice) -> AxiomVerdict:
    failed = _bl_prefix(L, "mv_ring")
    if failed:
        return failed
    i = np.arange(L.size)
    return _verdict("mv_ring", L.ann[L.ann] == i, "double negation")


def check_godel_ring(L: IdealLattice) -> AxiomVerdict:
    failed = _bl_prefix(L, "godel_ring")
    if failed:
        return failed
    return _verdict("godel_ring", L.prod == L.meet, "I*J != I&J")


# ---------------------------------------------------------------------------
# witness re-validation from raw ideal sets
# ---------------------------------------------------------------------------


def revalidate(verdict: AxiomVerdict, L: IdealLattice) -> bool:
    """Recompute a failing verdict's witness with set-level ideal operations.

    Returns True when the witness really is a counterexample. Uses the
    membership-vector routines rather than the lattice tables the checker read.
    """
    if verdict.holds is not False:
        raise ValueError("only failing verdicts carry a witness")
    I = [L[w] for w in verdict.witness]
    R = L.ring
    top = L[L.top]
    name = verdict.name
    if name in ("mv_ring", "godel_ring") and verdict.note.endswith("fails"):
        name = verdict.note.split()[0]
    if name == "blr1":
        return ideal_intersection(I[0], I[1]) != ideal_product(I[0], residuum(I[0], I[1]))
    if name == "blr2":
        return ideal_sum(residuum(I[0], I[1]), residuum(I[1], I[0])) != top
    if name == "blr21":
        return residuum(ideal_intersection(I[0], I[1]), I[2]) != ideal_sum(residuum(I[0], I[2]), residuum(I[1], I[2]))
    if name == "blr22":
        return residuum(I[0], ideal_sum(I[1], I[2])) != ideal_sum(residuum(I[0], I[1]), residuum(I[0], I[2]))
    if name == "blr3":
        zero = ideal_generated(R, ())
        return ideal_intersection(I[0], I[1]) == zero and ideal_sum(annihilator(I[0]), annihilator(I[1])) != top
    if name == "multiplication":
        return I[0] <= I[1] and all(ideal_product(I[1], K) != I[0] for K in L.ideals)
    if name == "baer":
        ann = annihilator(I[0])
        return all(ideal_generated(R, (e,)) != ann for e in R.idempotents)
    if name == "mv_ring":
        return annihilator(annihilator(I[0])) != I[0]
    if name == "godel_ring":
        return ideal_product(I[0], I[1]) != ideal_intersection(I[0], I[1])
    raise ValueError(f"no re-validation rule for {verdict.name}")


# ---------------------------------------------------------------------------
# classification report
# ---------------------------------------------------------------------------

FLAG_ORDER = (
    "blr1",
    "blr2",
    "blr21",
    "blr22",
    "blr3",
    "multiplication",
    "bl_ring",
    "mv_ring",
    "godel_ring",
    "baer",
    "reduced",
    "vnr",
    "local",
    "chain_ideals",
    "subdirectly_irreducible",
    "generated_by_idempotents",
)
STAT_ORDER = ("mv_center_size", "dense_count", "minimal_ideal_size")
CSV_COLUMNS = ("label", "order", "ideal_count") + FLAG_ORDER + ("mv_center_size", "dense_count")


def _fmt(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass
class ClassificationReport:
    label: str
    order: int
    ideal_count: int
    flags: dict[str, bool | None]
    mv_center_size: int
    dense_count: int
    minimal_ideal_size: int | None
    verdicts: dict[str, AxiomVerdict] = field(default_factory=dict)
    lattice: IdealLattice | None = field(default=None, repr=False, compare=False)

    def __getitem__(self, flag: str):
        return self.flags[flag]

    @property
    def bl_ring(self) -> bool:
        return bool(self.flags["bl_ring"])

    def witnesses(self) -> dict[str, list[tuple[int, ...]]]:
        """Failing verdict witnesses rendered as member lists of the ideals involved."""
        out = {}
        for name, v in self.verdicts.items():
            if v.holds is False and self.lattice is not None:
                out[name] = [self.lattice[w].elements() for w in v.witness]
        return out

    def to_record(self) -> str:
        lines = [f"label: {self.label}", f"order: {self.order}", f"ideal_count: {self.ideal_count}"]
        lines += [f"{k}: {_fmt(self.flags[k])}" for k in FLAG_ORDER]
        lines += [f"{k}: {_fmt(getattr(self, k))}" for k in STAT_ORDER]
        for name, sets in self.witnesses().items():
            rendered = " ".join("[" + " ".join(map(str, s)) + "]" for s in sets)
            lines.append(f"witness_{name}: {rendered}")
        return "\n".join(lines) + "\n"

    def csv_row(self) -> list[str]:
        values = {"label": self.label, "order": self.order, "ideal_count": self.ideal_count}
        values.update(self.flags)
        values["mv_center_size"] = self.mv_center_size
        values["dense_count"] = self.dense_count
        return [_fmt(values[c]) for c in CSV_COLUMNS]


def classify(R: FiniteRing, ideal_cap: int = DEFAULT_IDEAL_CAP, lattice: IdealLattice | None = None) -> ClassificationReport:
    """Enumerate ideals and run every checker; the zero ring satisfies every flag."""
    L = lattice if lattice is not None else enumerate_ideals(R, ideal_cap)
    verdicts = {
        v.name: v
        for v in (
            check_blr1(L),
            check_blr2(L),
            check_blr21(L),
            check_blr22(L),
            check_blr3(L),
            check_multiplication(L),
            check_mv_ring(L),
            check_godel_ring(L),
            check_baer(R, L),
        )
    }
    rf = ring_flags(R, L)
    M = is_subdirectly_irreducible(R, L)
    flags: dict[str, bool | None] = {k: bool(verdicts[k].holds) for k in ("blr1", "blr2", "blr21", "blr22", "blr3", "multiplication")}
    flags["bl_ring"] = flags["blr1"] and flags["blr2"]
    flags["mv_ring"] = bool(verdicts["mv_ring"].holds)
    flags["godel_ring"] = bool(verdicts["godel_ring"].holds)
    flags["baer"] = verdicts["baer"].holds
    flags["reduced"] = rf.is_reduced
    flags["vnr"] = rf.is_vnr
    flags["local"] = rf.is_local
    flags["chain_ideals"] = L.is_chain()
    flags["subdirectly_irreducible"] = M is not None or R.is_zero_ring
    flags["generated_by_idempotents"] = rf.is_generated_by_idempotents

    mv = mv_center(to_residuated_lattice(L))
    return ClassificationReport(
        label=R.label,
        order=R.order,
        ideal_count=L.size,
        flags=flags,
        mv_center_size=len(mv.mv_center),
        dense_count=len(mv.dense),
        minimal_ideal_size=len(M) if M is not None else None,
        verdicts=verdicts,
        lattice=L,
    )
