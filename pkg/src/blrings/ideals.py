"""Ideals of a finite ring and the residuated lattice they form."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import _kernels
from .errors import IdealCapError, LatticeError, MixedRingError, NotAnIdealError
from .ring_core import FiniteRing, ideal_violation

DEFAULT_IDEAL_CAP = 2**16
SUBSET_ORACLE_MAX_ORDER = 20


def _key(members: np.ndarray) -> bytes:
    return np.packbits(members).tobytes()


class Ideal:
    """An ideal, identified by its membership vector.

    ``generators`` is a witness (the ideal is the closure of it) and plays no
    part in equality or hashing.
    """

    __slots__ = ("ring", "members", "generators", "_key")

    def __init__(self, ring: FiniteRing, members: np.ndarray, generators: Iterable[int] = ()):
        members = np.array(members, dtype=np.bool_)
        members.setflags(write=False)
        self.ring = ring
        self.members = members
        self.generators = tuple(int(g) for g in generators)
        self._key = _key(members)

    @property
    def key(self) -> bytes:
        return self._key

    def elements(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.members))

    def __len__(self) -> int:
        return int(self.members.sum())

    def __contains__(self, x: int) -> bool:
        return bool(self.members[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __le__(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return not (self.members & ~other.members).any()

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self != other

    def __repr__(self) -> str:
        return f"Ideal({self.ring.label}, {{{', '.join(map(str, self.elements()))}}})"


def _same_ring(I: Ideal, J: Ideal) -> FiniteRing:
    if I.ring is not J.ring:
        raise MixedRingError(f"ideals of different rings: {I.ring.label} and {J.ring.label}")
    return I.ring


def make_ideal(R: FiniteRing, members, generators: Iterable[int] = ()) -> Ideal:
    """Wrap a membership vector (or member indices) after checking the ideal axioms."""
    members = np.asarray(members)
    if members.dtype != np.bool_:
        mask = np.zeros(R.order, dtype=np.bool_)
        mask[members.astype(np.int64)] = True
        members = mask
    w = ideal_violation(R, members)
    if w is not None:
        raise NotAnIdealError("not an ideal", w)
    return Ideal(R, members, generators)


def ideal_generated(R: FiniteRing, S: Iterable[int]) -> Ideal:
    """Least ideal containing ``S``: additive span of ``S`` together with ``R*S``."""
    S = sorted(set(int(s) for s in S))
    mask = np.zeros(R.order, dtype=np.bool_)
    mask[S] = True
    return Ideal(R, _kernels.ideal_closure(R.add, R.mul, R.zero, mask), S)


def zero_ideal(R: FiniteRing) -> Ideal:
    return ideal_generated(R, ())


def whole_ring(R: FiniteRing) -> Ideal:
    return Ideal(R, np.ones(R.order, dtype=np.bool_), range(R.order))


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    R = _same_ring(I, J)
    return Ideal(R, _kernels.sum_mask(R.add, I.members, J.members), I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    # pairwise products are not additively closed in general, hence the closure
    R = _same_ring(I, J)
    return Ideal(R, _kernels.product_mask(R.add, R.mul, R.zero, I.members, J.members))


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    R = _same_ring(I, J)
    return Ideal(R, I.members & J.members)


def residuum(I: Ideal, J: Ideal) -> Ideal:
    """``{x : x*I is contained in J}``."""
    R = _same_ring(I, J)
    out = _kernels.residuum_mask(R.mul, I.members, J.members)
    w = ideal_violation(R, out)
    if w is not None:  # pragma: no cover - would mean J is not an ideal
        raise NotAnIdealError("residuum is not an ideal", w)
    return Ideal(R, out)


def annihilator(I: Ideal) -> Ideal:
    return residuum(I, zero_ideal(I.ring))


class IdealLattice:
    """All ideals of a ring with their operation tables.

    Ideals are sorted by (size, sorted member list), so index 0 is the zero
    ideal and the last index is the ring itself. Tables hold ideal indices:
    ``sum``, ``prod``, ``meet`` and ``res`` are ``(k, k)``; ``ann`` is ``(k,)``;
    ``leq[i, j]`` means ideal ``i`` is contained in ideal ``j``.
    """

    def __init__(self, ring: FiniteRing, ideals: list[Ideal]):
        self.ring = ring
        self.ideals = ideals
        self.members = np.array([I.members for I in ideals], dtype=np.bool_).reshape(len(ideals), ring.order)
        self._index = {I.key: i for i, I in enumerate(ideals)}
        if len(self._index) != len(ideals):
            raise LatticeError("duplicate ideal in list")
        m = self.members
        self.leq = ~(m[:, None, :] & ~m[None, :, :]).any(axis=2)
        self.meet = self._lookup(m[:, None, :] & m[None, :, :], "intersection")
        sums, prods, res = _kernels.op_masks(ring.add, ring.mul, ring.zero, m)
        self.sum = self._lookup(sums, "sum")
        self.prod = self._lookup(prods, "product")
        self.res = self._lookup(res, "residuum")
        self.ann = self.res[:, 0].copy()
        for t in (self.leq, self.meet, self.sum, self.prod, self.res, self.ann):
            t.setflags(write=False)

    def _lookup(self, masks: np.ndarray, what: str) -> np.ndarray:
        k = masks.shape[0]
        packed = np.packbits(masks, axis=-1)
        out = np.empty((k, k), dtype=np.int32)
        for i in range(k):
            for j in range(k):
                idx = self._index.get(packed[i, j].tobytes())
                if idx is None:
                    raise LatticeError(f"{what} of ideals {i} and {j} is missing from the lattice")
                out[i, j] = idx
        return out

    @property
    def size(self) -> int:
        return len(self.ideals)

    def __len__(self) -> int:
        return len(self.ideals)

    def __getitem__(self, i: int) -> Ideal:
        return self.ideals[i]

    @property
    def zero(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.ideals) - 1

    def index(self, ideal) -> int:
        members = getattr(ideal, "members", ideal)
        try:
            return self._index[_key(np.asarray(members, dtype=np.bool_))]
        except KeyError:
            raise NotAnIdealError("not an ideal of this lattice") from None

    def find(self, elements: Iterable[int]) -> int:
        """Index of the ideal with exactly these members."""
        mask = np.zeros(self.ring.order, dtype=np.bool_)
        mask[list(elements)] = True
        return self.index(mask)

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    def dump(self) -> str:
        """Deterministic text form: one member line per ideal, then labelled tables."""
        lines = [f"lattice {self.ring.label}", f"order {self.ring.order}", f"ideals {self.size}"]
        for i, I in enumerate(self.ideals):
            lines.append(f"I{i}: {' '.join(map(str, I.elements()))}")
        for name, table in (
            ("leq", self.leq.astype(np.int8)),
            ("sum", self.sum),
            ("product", self.prod),
            ("intersection", self.meet),
            ("residuum", self.res),
        ):
            lines.append(f"{name}:")
            lines.extend(" ".join(map(str, row)) for row in table.tolist())
        lines.append("annihilator:")
        lines.append(" ".join(map(str, self.ann.tolist())))
        return "\n".join(lines) + "\n"


def _sort_key(I: Ideal) -> tuple:
    return (len(I), I.elements())


def enumerate_ideals(R: FiniteRing, ideal_cap: int = DEFAULT_IDEAL_CAP) -> IdealLattice:
    """Every ideal of ``R``: principal ideals closed under pairwise sums.

    The result is audited: each set is re-checked against the ideal axioms
    and the list must be closed under sum and intersection (the lattice
    constructor fails otherwise).
    """
    principal = _kernels.principal_masks(R.add, R.mul, R.zero)
    zero = np.zeros(R.order, dtype=np.bool_)
    zero[R.zero] = True
    found: dict[bytes, Ideal] = {}

    def admit(mask, gens) -> Ideal | None:
        k = _key(mask)
        if k in found:
            return None
        if len(found) >= ideal_cap:
            raise IdealCapError(f"{R.label}: more than {ideal_cap} ideals")
        I = Ideal(R, mask, gens)
        found[k] = I
        return I

    admit(zero, ())
    frontier = []
    for x in range(R.order):
        I = admit(principal[x], (x,))
        if I is not None:
            frontier.append(I)
    while frontier:
        current = list(found.values())
        nxt = []
        for F in frontier:
            for E in current:
                gens = tuple(sorted(set(E.generators + F.generators)))
                I = admit(_kernels.sum_mask(R.add, E.members, F.members), gens)
                if I is not None:
                    nxt.append(I)
        frontier = nxt

    ideals = sorted(found.values(), key=_sort_key)
    for I in ideals:
        w = ideal_violation(R, I.members)
        if w is not None:  # pragma: no cover - enumeration bug guard
            raise LatticeError(f"enumerated set {I.elements()} is not an ideal: {w}")
    return IdealLattice(R, ideals)


def ideals_by_subset_filter(R: FiniteRing) -> list[Ideal]:
    """Test oracle: scan all ``2**n`` subsets and keep those satisfying the ideal axioms."""
    n = R.order
    if n > SUBSET_ORACLE_MAX_ORDER:
        raise ValueError(f"subset oracle limited to order <= {SUBSET_ORACLE_MAX_ORDER}, got {n}")
    masks = _kernels.subset_ideals(R.add, R.mul, R.zero)
    bits = ((masks[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1).astype(np.bool_)
    return sorted((Ideal(R, b) for b in bits), key=_sort_key)


def to_residuated_lattice(L: IdealLattice):
    """Export ``A(R)`` as an abstract :class:`~blrings.structure.FiniteResiduatedLattice`.

    The abstract constructor re-verifies the lattice and adjunction laws.
    """
    from .structure import FiniteResiduatedLattice

    return FiniteResiduatedLattice(
        leq=L.leq,
        meet=L.meet,
        join=L.sum,
        times=L.prod,
        residuum=L.res,
        bottom=L.zero,
        top=L.top,
        label=f"A({L.ring.label})",
    )
