"""Abstract finite residuated lattices and the structure theory of A(R).

Covers the MV-center, dense elements, Lukasiewicz chains, ordinal sums,
the quotient by the dense filter, and isomorphism search between finite
residuated lattices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._search import DEFAULT_LIMIT, find_isomorphism
from .errors import LatticeError, NotBLError
from .verdict import AxiomVerdict, first_pair


class FiniteResiduatedLattice:
    """Carrier ``0..size-1`` with order, lattice, monoid and residuum tables.

    Construction checks that ``leq`` is a bounded partial order with
    ``meet``/``join`` as glb/lub, that ``times`` is a commutative monoid with
    unit ``top``, and the adjunction ``times[x,y] <= z iff x <= residuum[y,z]``.
    """

    def __init__(self, leq, meet, join, times, residuum, bottom: int, top: int, label: str = "L", validate: bool = True):
        self.leq = np.array(leq, dtype=np.bool_)
        self.meet = np.array(meet, dtype=np.int32)
        self.join = np.array(join, dtype=np.int32)
        self.times = np.array(times, dtype=np.int32)
        self.residuum = np.array(residuum, dtype=np.int32)
        self.bottom = int(bottom)
        self.top = int(top)
        self.label = label
        n = self.leq.shape[0]
        for t in (self.leq, self.meet, self.join, self.times, self.residuum):
            if t.shape != (n, n):
                raise LatticeError(f"{label}: table shape {t.shape} != {(n, n)}")
            t.setflags(write=False)
        if validate:
            self._validate()

    def _validate(self) -> None:
        n, le = self.size, self.leq
        x = np.arange(n)

        def require(mask, what):
            w = first_pair(mask)
            if w is not None:
                raise LatticeError(f"{self.label}: {what} fails at {w}")

        require(le[x, x], "reflexivity")
        require(~(le & le.T) | (x[:, None] == x[None, :]), "antisymmetry")
        require(~(le[:, :, None] & le[None, :, :]) | le[:, None, :], "transitivity")
        require(le[self.bottom, :], "bottom is least")
        require(le[:, self.top], "top is greatest")
        m, j = self.meet, self.join
        require(le[m, x[:, None]] & le[m, x[None, :]], "meet is a lower bound")
        require(le[x[:, None], j] & le[x[None, :], j], "join is an upper bound")
        # z <= x and z <= y  ==>  z <= meet[x, y]; dually for join
        lower = le[:, :, None] & le[:, None, :]
        require(~lower | le[x[:, None, None], m[None, :, :]], "meet is greatest lower bound")
        upper = le.T[:, :, None] & le.T[:, None, :]
        require(~upper | le[j[None, :, :], x[:, None, None]], "join is least upper bound")
        t = self.times
        require(t == t.T, "commutativity of times")
        require(t[self.top] == x, "top is the unit of times")
        require(t[t[:, :, None], x[None, None, :]] == t[x[:, None, None], t[None, :, :]], "associativity of times")
        # adjunction indexed as [x, y, z]
        lhs = le[t[:, :, None], x[None, None, :]]
        rhs = le[x[:, None, None], self.residuum[None, :, :]]
        require(lhs == rhs, "adjunction")

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def __len__(self) -> int:
        return self.size

    @property
    def negation(self) -> np.ndarray:
        return self.residuum[:, self.bottom]

    def regular(self) -> np.ndarray:
        neg = self.negation
        return neg[neg] == np.arange(self.size)

    def dense(self) -> np.ndarray:
        return self.negation == self.bottom

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    def dump(self) -> str:
        lines = [f"algebra {self.label}", f"size {self.size}", f"bottom {self.bottom}", f"top {self.top}"]
        for name, table in (
            ("leq", self.leq.astype(np.int8)),
            ("meet", self.meet),
            ("join", self.join),
            ("times", self.times),
            ("residuum", self.residuum),
        ):
            lines.append(f"{name}:")
            lines.extend(" ".join(map(str, row)) for row in table.tolist())
        lines.append("negation:")
        lines.append(" ".join(map(str, self.negation.tolist())))
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"FiniteResiduatedLattice({self.label!r}, size={self.size})"


def subalgebra(L: FiniteResiduatedLattice, elements, bottom: int, label: str) -> FiniteResiduatedLattice:
    """Restriction of ``L`` to ``elements``, which must be closed under all operations."""
    elements = [int(e) for e in elements]
    pos = np.full(L.size, -1, dtype=np.int64)
    pos[elements] = np.arange(len(elements))
    sub = np.ix_(elements, elements)
    tables = []
    for name in ("meet", "join", "times", "residuum"):
        t = pos[getattr(L, name)[sub]]
        if (t < 0).any():
            raise LatticeError(f"{label}: subset not closed under {name}")
        tables.append(t)
    return FiniteResiduatedLattice(L.leq[sub], *tables, bottom=int(pos[bottom]), top=int(pos[L.top]), label=label)


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------


def check_bl_algebra(L: FiniteResiduatedLattice) -> AxiomVerdict:
    """Divisibility ``x & y = (x -> y) * x`` and prelinearity ``(x -> y) | (y -> x) = 1``."""
    x = np.arange(L.size)
    r = L.residuum
    w = first_pair(L.meet == L.times[r, x[:, None]])
    if w is not None:
        return AxiomVerdict.fail("bl_algebra", w, "divisibility")
    w = first_pair(L.join[r, r.T] == L.top)
    if w is not None:
        return AxiomVerdict.fail("bl_algebra", w, "prelinearity")
    return AxiomVerdict.ok("bl_algebra")


def check_mv_algebra(L: FiniteResiduatedLattice) -> AxiomVerdict:
    bl = check_bl_algebra(L)
    if not bl.holds:
        return AxiomVerdict("mv_algebra", False, bl.witness, bl.note)
    reg = L.regular()
    if not reg.all():
        return AxiomVerdict.fail("mv_algebra", (int(np.argmin(reg)),), "double negation")
    return AxiomVerdict.ok("mv_algebra")


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def lukasiewicz_chain(k: int) -> FiniteResiduatedLattice:
    """The k-element MV-chain; element ``i`` stands for ``i/(k-1)``."""
    if k < 2:
        raise ValueError("Lukasiewicz chain needs k >= 2")
    i = np.arange(k)
    top = k - 1
    return FiniteResiduatedLattice(
        leq=i[:, None] <= i[None, :],
        meet=np.minimum(i[:, None], i[None, :]),
        join=np.maximum(i[:, None], i[None, :]),
        times=np.maximum(0, i[:, None] + i[None, :] - top),
        residuum=np.minimum(top, top - i[:, None] + i[None, :]),
        bottom=0,
        top=top,
        label=f"L{k}",
    )


def godel_chain(k: int) -> FiniteResiduatedLattice:
    """The k-element chain with ``times = meet``."""
    if k < 2:
        raise ValueError("Goedel chain needs k >= 2")
    i = np.arange(k)
    top = k - 1
    meet = np.minimum(i[:, None], i[None, :])
    return FiniteResiduatedLattice(
        leq=i[:, None] <= i[None, :],
        meet=meet,
        join=np.maximum(i[:, None], i[None, :]),
        times=meet,
        residuum=np.where(i[:, None] <= i[None, :], top, i[None, :]),
        bottom=0,
        top=top,
        label=f"G{k}",
    )


def ordinal_sum(A: FiniteResiduatedLattice, B: FiniteResiduatedLattice) -> FiniteResiduatedLattice:
    """Stack ``A`` below ``B``: carrier ``(A minus its top)`` followed by ``B``.

    The top of ``A`` is identified with the bottom of ``B``. Between blocks,
    for ``a`` in the lower part and ``b`` in ``B``: ``a <= b``, ``a*b = a``,
    ``a -> b = top`` and ``b -> a = a``. Inside ``A``, a residuum equal to the
    top of ``A`` becomes the global top and a join equal to it becomes the
    bottom of ``B``.
    """
    if B.size < 1:
        raise ValueError("upper summand must be nonempty")
    lower = [a for a in range(A.size) if a != A.top]
    nl = len(lower)
    n = nl + B.size
    apos = np.full(A.size, -1, dtype=np.int64)
    apos[lower] = np.arange(nl)
    apos[A.top] = nl + B.bottom
    top = nl + B.top
    bottom = apos[A.bottom] if nl else nl + B.bottom

    leq = np.zeros((n, n), dtype=np.bool_)
    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    times = np.zeros((n, n), dtype=np.int64)
    res = np.zeros((n, n), dtype=np.int64)

    lo = np.arange(nl)
    hi = np.arange(nl, n)
    sub = np.ix_(lower, lower)
    leq[np.ix_(lo, lo)] = A.leq[sub]
    meet[np.ix_(lo, lo)] = apos[A.meet[sub]]
    join[np.ix_(lo, lo)] = apos[A.join[sub]]
    times[np.ix_(lo, lo)] = apos[A.times[sub]]
    res[np.ix_(lo, lo)] = np.where(A.leq[sub], top, apos[A.residuum[sub]])

    hs = np.ix_(hi, hi)
    leq[hs] = B.leq
    meet[hs] = B.meet + nl
    join[hs] = B.join + nl
    times[hs] = B.times + nl
    res[hs] = B.residuum + nl

    a_col = lo[:, None]
    b_row = hi[None, :]
    cross = np.ix_(lo, hi)
    cross_t = np.ix_(hi, lo)
    leq[cross] = True
    meet[cross] = np.broadcast_to(a_col, (nl, B.size))
    meet[cross_t] = meet[cross].T
    join[cross] = np.broadcast_to(b_row, (nl, B.size))
    join[cross_t] = join[cross].T
    times[cross] = meet[cross]
    times[cross_t] = meet[cross_t]
    res[cross] = top
    res[cross_t] = meet[cross_t]
    return FiniteResiduatedLattice(leq, meet, join, times, res, bottom=int(bottom), top=int(top), label=f"({A.label}+{B.label})")


def mv_algebra(L: FiniteResiduatedLattice) -> FiniteResiduatedLattice:
    """The MV-center: regular elements with MV join ``(x* & y*)*`` and product ``(x -> y*)*``."""
    reg = np.flatnonzero(L.regular())
    neg = L.negation
    join = L.join.copy()
    times = L.times.copy()
    for x in reg:
        for y in reg:
            join[x, y] = neg[L.meet[neg[x], neg[y]]]
            times[x, y] = neg[L.residuum[x, neg[y]]]
    tmp = FiniteResiduatedLattice(L.leq, L.meet, join, times, L.residuum, L.bottom, L.top, validate=False)
    return subalgebra(tmp, reg, L.bottom, label=f"MV({L.label})")


def dense_algebra(L: FiniteResiduatedLattice) -> FiniteResiduatedLattice:
    """Dense elements as a residuated lattice whose bottom is the least dense element."""
    dense = np.flatnonzero(L.dense())
    low = int(dense[0])
    for d in dense[1:]:
        low = int(L.meet[low, d])
    if not L.dense()[low]:
        raise LatticeError(f"{L.label}: dense elements have no least element")
    return subalgebra(L, dense, low, label=f"D({L.label})")


def quotient_by_dense_filter(L: FiniteResiduatedLattice) -> FiniteResiduatedLattice:
    """``L / D`` where ``x ~ y`` iff ``x -> y`` and ``y -> x`` are both dense. BL inputs only."""
    bl = check_bl_algebra(L)
    if not bl.holds:
        raise NotBLError(f"{L.label} is not a BL-algebra ({bl.note} at {bl.witness})")
    F = L.dense()
    r = L.residuum
    close = F[r] & F[r.T]
    rep = np.argmax(close, axis=1)
    reps, cls = np.unique(rep, return_inverse=True)
    if not (close[reps][:, reps] == np.eye(reps.size, dtype=bool)).all():
        raise LatticeError(f"{L.label}: dense relation is not an equivalence")
    for name in ("meet", "join", "times", "residuum"):
        t = getattr(L, name)
        if not (cls[t] == cls[t[np.ix_(rep, rep)]]).all():
            raise LatticeError(f"{L.label}: dense relation is not a congruence for {name}")
    sub = np.ix_(reps, reps)
    return FiniteResiduatedLattice(
        leq=F[r[sub]],
        meet=cls[L.meet[sub]],
        join=cls[L.join[sub]],
        times=cls[L.times[sub]],
        residuum=cls[r[sub]],
        bottom=int(cls[L.bottom]),
        top=int(cls[L.top]),
        label=f"{L.label}/D",
    )


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------


def _signatures(L: FiniteResiduatedLattice) -> list[tuple]:
    below = L.leq.sum(axis=0)
    above = L.leq.sum(axis=1)
    x = np.arange(L.size)
    idem = L.times[x, x] == x
    dense = L.dense()
    reg = L.regular()
    return [(int(below[i]), int(above[i]), bool(idem[i]), bool(dense[i]), bool(reg[i])) for i in range(L.size)]


def iso_search(L1: FiniteResiduatedLattice, L2: FiniteResiduatedLattice, limit: int = DEFAULT_LIMIT) -> list[int] | None:
    """A bijection preserving meet, join, times and residuum, or None.

    Raises :class:`~blrings.errors.InconclusiveSearch` rather than answering
    None when the assignment budget runs out.
    """
    if L1.size != L2.size:
        return None
    ops1 = [L1.meet, L1.join, L1.times, L1.residuum]
    ops2 = [L2.meet, L2.join, L2.times, L2.residuum]
    fixed = [(L1.bottom, L2.bottom), (L1.top, L2.top)]
    return find_isomorphism(ops1, ops2, _signatures(L1), _signatures(L2), fixed, limit)


# ---------------------------------------------------------------------------
# ideal-lattice structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    mv_center: tuple[int, ...]
    dense: tuple[int, ...]
    mv_is_chain: bool
    lukasiewicz_rank: int | None = None
    minimal_nonzero: int | None = None
    ordinal_sum_iso: bool | None = None
    quotient_iso_mv: bool | None = None
    items: tuple[AxiomVerdict, ...] = field(default=())
    applicable: bool = True
    note: str = ""

    @property
    def holds(self) -> bool | None:
        if not self.applicable:
            return None
        return all(v.holds for v in self.items) and bool(self.ordinal_sum_iso) and bool(self.quotient_iso_mv)


def mv_center(L: FiniteResiduatedLattice) -> StructureReport:
    reg = np.flatnonzero(L.regular())
    sub = L.leq[np.ix_(reg, reg)]
    chain = bool((sub | sub.T).all())
    return StructureReport(
        mv_center=tuple(int(i) for i in reg),
        dense=tuple(int(i) for i in np.flatnonzero(L.dense())),
        mv_is_chain=chain,
        lukasiewicz_rank=int(reg.size) if chain else None,
    )


def is_subdirectly_irreducible(R, L):
    """The least nonzero ideal if the nonzero ideals have nonzero intersection, else None."""
    if L.size < 2:
        return None
    m = L.top
    for i in range(1, L.size):
        m = int(L.meet[m, i])
    return None if m == L.zero else L[m]


def check_subirr_structure(R, L, bl_ring: bool | None = None) -> StructureReport:
    """Structure of a subdirectly irreducible BL-ring's ideal lattice.

    Items: annihilators form a chain; every ideal is an annihilator or dense;
    the minimal ideal is an annihilator; annihilators below dense ideals with
    ``J -> I = I``; one of ``I -> J``, ``J -> I`` is dense for every pair. Also
    records the coatom of the MV-center, the ordinal-sum decomposition and
    the dense-filter quotient, each decided by isomorphism search.
    """
    from .ideals import to_residuated_lattice

    A = to_residuated_lattice(L)
    base = mv_center(A)
    M = is_subdirectly_irreducible(R, L)
    if bl_ring is None:
        bl_ring = bool(check_bl_algebra(A).holds)
    if M is None or not bl_ring:
        why = "not subdirectly irreducible" if M is None else "not a BL-ring"
        return StructureReport(base.mv_center, base.dense, base.mv_is_chain, base.lukasiewicz_rank, applicable=False, note=why)
    m = L.index(M)
    ann, res, leq = L.ann, L.res, L.leq
    regular = set(base.mv_center)
    dense = set(base.dense)
    items = []

    bad = next(((i, j) for i in base.mv_center for j in base.mv_center if not (leq[i, j] or leq[j, i])), None)
    items.append(AxiomVerdict.ok("annihilators_chain") if bad is None else AxiomVerdict.fail("annihilators_chain", bad))

    bad = next((i for i in range(L.size) if i not in regular and i not in dense), None)
    items.append(AxiomVerdict.ok("annihilator_or_dense") if bad is None else AxiomVerdict.fail("annihilator_or_dense", (bad,)))

    items.append(AxiomVerdict.ok("minimal_is_annihilator") if m in regular else AxiomVerdict.fail("minimal_is_annihilator", (m,)))

    bad = next(
        ((i, j) for i in sorted(regular) if i != L.top for j in sorted(dense) if not (leq[i, j] and res[j, i] == i)),
        None,
    )
    items.append(AxiomVerdict.ok("annihilator_below_dense") if bad is None else AxiomVerdict.fail("annihilator_below_dense", bad))

    bad = next(
        ((i, j) for i in range(L.size) for j in range(L.size) if res[i, j] not in dense and res[j, i] not in dense),
        None,
    )
    items.append(AxiomVerdict.ok("residua_dense") if bad is None else AxiomVerdict.fail("residua_dense", bad))

    proper = [i for i in base.mv_center if i != L.top]
    coatom = max(proper, key=lambda i: len(L[i])) if proper else None
    if coatom is not None and coatom == ann[m] and all(leq[i, coatom] for i in proper):
        items.append(AxiomVerdict.ok("mv_coatom_is_M_star"))
    else:
        items.append(AxiomVerdict.fail("mv_coatom_is_M_star", (m, int(ann[m]))))

    mv = mv_algebra(A)
    ord_iso = iso_search(A, ordinal_sum(mv, dense_algebra(A))) is not None
    quo_iso = iso_search(quotient_by_dense_filter(A), mv) is not None
    return StructureReport(
        mv_center=base.mv_center,
        dense=base.dense,
        mv_is_chain=base.mv_is_chain,
        lukasiewicz_rank=base.lukasiewicz_rank,
        minimal_nonzero=m,
        ordinal_sum_iso=ord_iso,
        quotient_iso_mv=quo_iso,
        items=tuple(items),
    )
