"""Finite commutative rings presented by operation tables.

Elements are the indices ``0..order-1``. Every constructor validates the
tables before returning, so a :class:`FiniteRing` in hand is always a
commutative ring (possibly without identity).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._search import DEFAULT_LIMIT, find_isomorphism
from .errors import NotAnIdealError, OrderCapError, RingAxiomError, StructureConstantError

DEFAULT_ORDER_CAP = 4096
# Above this order the n^3 axiom scans are replaced by random triples.
EXHAUSTIVE_LIMIT = 128
SAMPLED_TRIPLES = 200_000


def _first_false(mask: np.ndarray) -> tuple[int, ...] | None:
    if mask.all():
        return None
    return tuple(int(i) for i in np.argwhere(~mask)[0])


def _check_tables(add: np.ndarray, mul: np.ndarray, zero: int) -> None:
    n = add.shape[0]
    idx = np.arange(n)
    bad = np.flatnonzero(add[zero] != idx)
    if bad.size:
        raise RingAxiomError("zero is not an additive identity", (zero, int(bad[0])))
    w = _first_false(add == add.T)
    if w:
        raise RingAxiomError("addition is not commutative", w)
    bad = np.flatnonzero(~(add == zero).any(axis=1))
    if bad.size:
        raise RingAxiomError("element has no additive inverse", (int(bad[0]),))
    w = _first_false(mul == mul.T)
    if w:
        raise RingAxiomError("multiplication is not commutative", w)

    if n <= EXHAUSTIVE_LIMIT:
        a, b, c = idx[:, None, None], idx[None, :, None], idx[None, None, :]
        triples = None
    else:
        rng = np.random.default_rng(n)
        triples = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
        a, b, c = triples

    def _witness(mask):
        if triples is None:
            return _first_false(mask)
        if mask.all():
            return None
        k = int(np.flatnonzero(~mask)[0])
        return tuple(int(t[k]) for t in triples)

    w = _witness(add[add[a, b], c] == add[a, add[b, c]])
    if w:
        raise RingAxiomError("addition is not associative", w)
    w = _witness(mul[mul[a, b], c] == mul[a, mul[b, c]])
    if w:
        raise RingAxiomError("multiplication is not associative", w)
    w = _witness(mul[a, add[b, c]] == add[mul[a, b], mul[a, c]])
    if w:
        raise RingAxiomError("multiplication does not distribute over addition", w)


class FiniteRing:
    """A finite commutative ring given by ``add``/``mul`` tables on ``0..n-1``.

    ``unity`` is detected when not supplied; a supplied unity is checked.
    Tables are copied and frozen, so instances are safe to share.
    """

    def __init__(
        self,
        add,
        mul,
        *,
        zero: int | None = None,
        unity: int | None = None,
        label: str = "R",
        validate: bool = True,
    ):
        add = np.array(add, dtype=np.int32)
        mul = np.array(mul, dtype=np.int32)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
            raise RingAxiomError("tables must be square and of equal shape")
        n = add.shape[0]
        if n == 0:
            raise RingAxiomError("empty carrier")
        if add.min() < 0 or add.max() >= n or mul.min() < 0 or mul.max() >= n:
            raise RingAxiomError("table entry outside the carrier")
        idx = np.arange(n)
        if zero is None:
            rows = np.flatnonzero((add == idx).all(axis=1))
            if rows.size == 0:
                raise RingAxiomError("no additive identity")
            zero = int(rows[0])
        if validate:
            _check_tables(add, mul, zero)
        if unity is None:
            rows = np.flatnonzero((mul == idx).all(axis=1))
            unity = int(rows[0]) if rows.size else None
        elif not (mul[unity] == idx).all():
            raise RingAxiomError("declared unity is not a multiplicative identity", (unity,))
        add.setflags(write=False)
        mul.setflags(write=False)
        self.add = add
        self.mul = mul
        self.zero = int(zero)
        self.unity = unity
        self.label = label

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @property
    def has_unity(self) -> bool:
        return self.unity is not None

    @property
    def is_zero_ring(self) -> bool:
        return self.order == 1

    @cached_property
    def neg(self) -> np.ndarray:
        out = np.argmax(self.add == self.zero, axis=1).astype(np.int32)
        out.setflags(write=False)
        return out

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        idx = np.arange(self.order)
        return tuple(int(e) for e in np.flatnonzero(self.mul[idx, idx] == idx))

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def power(self, x: int, k: int) -> int:
        if k < 1:
            raise ValueError("power needs k >= 1 (rings may lack identity)")
        out = x
        for _ in range(k - 1):
            out = int(self.mul[out, x])
        return out

    def additive_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.zero:
            y = int(self.add[y, x])
            k += 1
        return k

    def relabel(self, label: str) -> "FiniteRing":
        return FiniteRing(self.add, self.mul, zero=self.zero, unity=self.unity, label=label, validate=False)

    def same_tables(self, other: "FiniteRing") -> bool:
        return (
            self.order == other.order
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
        )

    def __repr__(self) -> str:
        u = "" if self.unity is None else f", unity={self.unity}"
        return f"FiniteRing({self.label!r}, order={self.order}{u})"


@dataclass(frozen=True, eq=False)
class RingHom:
    """Homomorphism given by its values on element indices; checked on creation."""

    source: FiniteRing
    target: FiniteRing
    map: np.ndarray
    unital: bool = False

    def __post_init__(self):
        m = np.array(self.map, dtype=np.int32)
        if m.shape != (self.source.order,) or m.min() < 0 or m.max() >= self.target.order:
            raise RingAxiomError("map is not a total function into the target")
        m.setflags(write=False)
        object.__setattr__(self, "map", m)
        s, t = self.source, self.target
        if m[s.zero] != t.zero:
            raise RingAxiomError("map does not preserve zero")
        w = _first_false(m[s.add] == t.add[m[:, None], m[None, :]])
        if w:
            raise RingAxiomError("map does not preserve addition", w)
        w = _first_false(m[s.mul] == t.mul[m[:, None], m[None, :]])
        if w:
            raise RingAxiomError("map does not preserve multiplication", w)
        if self.unital:
            if s.unity is None or t.unity is None or m[s.unity] != t.unity:
                raise RingAxiomError("map declared unital does not preserve unity")

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    @property
    def kernel(self) -> np.ndarray:
        return self.map == self.target.zero

    @property
    def is_surjective(self) -> bool:
        return np.unique(self.map).size == self.target.order

    @property
    def is_injective(self) -> bool:
        return np.unique(self.map).size == self.source.order


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def make_cyclic(n: int) -> FiniteRing:
    """The ring Z_n; ``make_cyclic(1)`` is the zero ring."""
    if n < 1:
        raise ValueError(f"Z_n needs n >= 1, got {n}")
    idx = np.arange(n)
    return FiniteRing((idx[:, None] + idx[None, :]) % n, (idx[:, None] * idx[None, :]) % n, zero=0, label=f"Z{n}")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def make_structure_algebra(p: int, dim: int, mulconst, label: str | None = None) -> FiniteRing:
    """Commutative Z_p-algebra on Z_p^dim with ``e_i e_j = sum_k mulconst[i][j][k] e_k``.

    An element with coordinates ``(c_0, ..., c_{dim-1})`` has index
    ``sum c_i p**i``. Non-commutative or non-associative constants raise
    :class:`StructureConstantError` with a basis triple as witness.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    c = np.asarray(mulconst, dtype=np.int64) % p
    if c.shape != (dim, dim, dim):
        raise ValueError(f"structure constants must have shape {(dim, dim, dim)}, got {c.shape}")
    for i in range(dim):
        for j in range(dim):
            if not np.array_equal(c[i, j], c[j, i]):
                raise StructureConstantError("structure constants are not commutative", (i, j))
    # (e_i e_j) e_k versus e_i (e_j e_k), both expanded in the basis
    left = np.einsum("ijm,mkl->ijkl", c, c) % p
    right = np.einsum("jkm,iml->ijkl", c, c) % p
    bad = np.argwhere((left != right).any(axis=3))
    if bad.size:
        raise StructureConstantError("structure constants are not associative", tuple(int(t) for t in bad[0]))

    n = p**dim
    if n > DEFAULT_ORDER_CAP:
        raise OrderCapError(f"algebra of order {n} exceeds cap {DEFAULT_ORDER_CAP}")
    weights = p ** np.arange(dim)
    coords = (np.arange(n)[:, None] // weights[None, :]) % p
    add = ((coords[:, None, :] + coords[None, :, :]) % p) @ weights
    prod = np.einsum("ai,bj,ijk->abk", coords, coords, c) % p
    mul = prod @ weights
    return FiniteRing(add, mul, zero=0, label=label or f"alg({p},{dim})")


def nil2(p: int) -> FiniteRing:
    """F_p[x,y]/(x,y)^2 on the basis (1, x, y): x is index p, y is index p**2."""
    c = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        c[0, i, i] = c[i, 0, i] = 1
    return make_structure_algebra(p, 3, c, label=f"nil2({p})")


def dual(p: int) -> FiniteRing:
    """F_p[x]/(x^2) on the basis (1, x): x is index p."""
    c = np.zeros((2, 2, 2), dtype=np.int64)
    for i in range(2):
        c[0, i, i] = c[i, 0, i] = 1
    return make_structure_algebra(p, 2, c, label=f"dual({p})")


def _wrap(label: str) -> str:
    # 'x' only ever occurs in labels as the product operator
    return f"({label})" if "x" in label else label


def direct_product(R: FiniteRing, S: FiniteRing, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteRing:
    """Componentwise product; element ``(r, s)`` has index ``r * |S| + s``."""
    n, m = R.order, S.order
    if n * m > order_cap:
        raise OrderCapError(f"product order {n * m} exceeds cap {order_cap}")

    def combine(a, b):
        return (a[:, None, :, None] * m + b[None, :, None, :]).reshape(n * m, n * m)

    unity = R.unity * m + S.unity if R.has_unity and S.has_unity else None
    label = f"{R.label}x{_wrap(S.label)}"
    return FiniteRing(
        combine(R.add, S.add),
        combine(R.mul, S.mul),
        zero=R.zero * m + S.zero,
        unity=unity,
        label=label,
    )


def projections(R: FiniteRing, S: FiniteRing, P: FiniteRing) -> tuple[RingHom, RingHom]:
    """Canonical projections from ``P = direct_product(R, S)`` onto its factors."""
    idx = np.arange(P.order)
    return RingHom(P, R, idx // S.order), RingHom(P, S, idx % S.order)


def _members_of(R: FiniteRing, I) -> np.ndarray:
    members = getattr(I, "members", I)
    members = np.asarray(members)
    if members.dtype != np.bool_:
        mask = np.zeros(R.order, dtype=np.bool_)
        mask[members.astype(np.int64)] = True
        members = mask
    if members.shape != (R.order,):
        raise NotAnIdealError("membership vector has the wrong length")
    return members


def ideal_violation(R: FiniteRing, members: np.ndarray) -> tuple | None:
    """First witness that ``members`` is not an ideal of ``R``, else None."""
    if not members[R.zero]:
        return ("zero", R.zero)
    idx = np.flatnonzero(members)
    sums = R.add[np.ix_(idx, idx)]
    bad = np.argwhere(~members[sums])
    if bad.size:
        return ("add", int(idx[bad[0][0]]), int(idx[bad[0][1]]))
    bad = np.flatnonzero(~members[R.neg[idx]])
    if bad.size:
        return ("neg", int(idx[bad[0]]))
    prods = R.mul[:, idx]
    bad = np.argwhere(~members[prods])
    if bad.size:
        return ("mul", int(bad[0][0]), int(idx[bad[0][1]]))
    return None


def quotient_ring(R: FiniteRing, I) -> tuple[FiniteRing, RingHom]:
    """Quotient by the ideal ``I`` (an Ideal, a membership vector, or member indices).

    Cosets are numbered by their least member, in increasing order.
    """
    members = _members_of(R, I)
    w = ideal_violation(R, members)
    if w is not None:
        raise NotAnIdealError("not an ideal", w)
    idx = np.flatnonzero(members)
    rep = R.add[:, idx].min(axis=1)
    reps, cls = np.unique(rep, return_inverse=True)
    add = cls[R.add[np.ix_(reps, reps)]]
    mul = cls[R.mul[np.ix_(reps, reps)]]
    gens = getattr(I, "generators", None)
    if gens is None:
        gens = tuple(int(x) for x in idx if x != R.zero)[:1] or (R.zero,)
    label = f"{_wrap(R.label)}/({','.join(str(g) for g in gens)})"
    unity = int(cls[R.unity]) if R.has_unity else None
    Q = FiniteRing(add, mul, zero=int(cls[R.zero]), unity=unity, label=label)
    return Q, RingHom(R, Q, cls, unital=R.has_unity)


def ideal_as_ring(R: FiniteRing, I, label: str | None = None) -> FiniteRing:
    """The ideal ``I`` viewed as a ring in its own right (often without identity)."""
    members = _members_of(R, I)
    w = ideal_violation(R, members)
    if w is not None:
        raise NotAnIdealError("not an ideal", w)
    idx = np.flatnonzero(members)
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    sub = np.ix_(idx, idx)
    return FiniteRing(pos[R.add[sub]], pos[R.mul[sub]], zero=int(pos[R.zero]), label=label or f"ideal<{R.label}>")


def corner_ring(R: FiniteRing, e: int) -> tuple[FiniteRing, np.ndarray]:
    """The ring ``eR`` for an idempotent ``e`` (identity ``e``) and its element indices in ``R``."""
    if R.mul[e, e] != e:
        raise ValueError(f"{e} is not idempotent")
    idx = np.unique(R.mul[e])
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    sub = np.ix_(idx, idx)
    ring = FiniteRing(pos[R.add[sub]], pos[R.mul[sub]], zero=int(pos[R.zero]), unity=int(pos[e]), label=f"{e}*({R.label})")
    return ring, idx


# ---------------------------------------------------------------------------
# element-level predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingFlags:
    has_unity: bool
    is_reduced: bool
    is_vnr: bool
    is_local: bool
    is_generated_by_idempotents: bool
    idempotents: tuple[int, ...] = field(default=())


def is_reduced(R: FiniteRing) -> bool:
    idx = np.arange(R.order)
    squares_zero = R.mul[idx, idx] == R.zero
    return bool(np.flatnonzero(squares_zero).tolist() == [R.zero])


def is_vnr(R: FiniteRing) -> bool:
    # a = a x a for some x, scanned over all (a, x)
    axa = R.mul[R.mul, np.arange(R.order)[:, None]]
    return bool((axa == np.arange(R.order)[:, None]).any(axis=1).all())


def is_generated_by_idempotents(R: FiniteRing) -> bool:
    es = np.array(R.idempotents)
    return bool((R.mul[:, es] == np.arange(R.order)[:, None]).any(axis=1).all())


def ring_flags(R: FiniteRing, lattice=None) -> RingFlags:
    """Element-level predicates; ``is_local`` counts maximal ideals (zero ring: local by convention)."""
    if R.is_zero_ring:
        local = True
    else:
        from .ideals import enumerate_ideals
        from .spectrum import maximal_ideals

        L = lattice if lattice is not None else enumerate_ideals(R)
        local = len(maximal_ideals(L)) == 1
    return RingFlags(
        has_unity=R.has_unity,
        is_reduced=is_reduced(R),
        is_vnr=is_vnr(R),
        is_local=local,
        is_generated_by_idempotents=is_generated_by_idempotents(R),
        idempotents=R.idempotents,
    )


# ---------------------------------------------------------------------------
# isomorphism oracle
# ---------------------------------------------------------------------------


def _element_signatures(R: FiniteRing) -> list[tuple]:
    n = R.order
    ann_sizes = (R.mul == R.zero).sum(axis=1)
    sigs = []
    for x in range(n):
        nil = 0
        y = x
        for k in range(1, n + 1):
            if y == R.zero:
                nil = k
                break
            y = int(R.mul[y, x])
        sigs.append((R.additive_order(x), nil, int(R.mul[x, x]) == x, int(ann_sizes[x])))
    return sigs


def find_ring_isomorphism(R: FiniteRing, S: FiniteRing, limit: int = DEFAULT_LIMIT) -> list[int] | None:
    """Brute-force ring isomorphism ``R -> S`` (pruned by element invariants), or None."""
    if R.order != S.order or R.has_unity != S.has_unity:
        return None
    fixed = [(R.zero, S.zero)]
    if R.has_unity:
        fixed.append((R.unity, S.unity))
    return find_isomorphism(
        [R.add, R.mul], [S.add, S.mul], _element_signatures(R), _element_signatures(S), fixed, limit
    )


def are_isomorphic(R: FiniteRing, S: FiniteRing) -> bool:
    return find_ring_isomorphism(R, S) is not None


def ideal_closure_mask(R: FiniteRing, elements: Iterable[int]) -> np.ndarray:
    mask = np.zeros(R.order, dtype=np.bool_)
    mask[list(elements)] = True
    return _kernels.ideal_closure(R.add, R.mul, R.zero, mask)


def element_index(ring_orders: Sequence[int], coords: Sequence[int]) -> int:
    """Index of ``(c_1, ..., c_k)`` in an iterated product of rings of the given orders."""
    out = 0
    for m, c in zip(ring_orders, coords):
        out = out * m + c
    return out
