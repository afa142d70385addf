"""Prime ideals, N(P), localization and the prime-ideal properties of BL-rings."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import NotPrimeError, NotUnitalError
from .ideals import Ideal, IdealLattice, enumerate_ideals, make_ideal
from .ring_core import FiniteRing, RingHom, corner_ring, quotient_ring
from .verdict import AxiomVerdict

log = logging.getLogger(__name__)


def _is_prime_index(L: IdealLattice, p: int) -> bool:
    if p == L.top:
        return False
    inside = L.leq[:, p]
    # I*J <= P  ==>  I <= P or J <= P
    return bool((~inside[L.prod] | inside[:, None] | inside[None, :]).all())


def maximal_ideals(L: IdealLattice) -> list[int]:
    proper = [i for i in range(L.size) if i != L.top]
    return [i for i in proper if not any(L.leq[i, j] and i != j for j in proper)]


@dataclass(frozen=True)
class PrimeSpectrum:
    ring: FiniteRing
    primes: tuple[int, ...]
    maximals: tuple[int, ...]
    minimal_primes: tuple[int, ...]


def prime_ideals(L: IdealLattice) -> PrimeSpectrum:
    """Primes by the ideal-pair test, which needs no identity element."""
    primes = [p for p in range(L.size) if _is_prime_index(L, p)]
    maxi = [p for p in maximal_ideals(L) if p in primes]
    mini = [p for p in primes if not any(L.leq[q, p] and q != p for q in primes)]
    return PrimeSpectrum(L.ring, tuple(primes), tuple(maxi), tuple(mini))


def is_elementwise_prime(R: FiniteRing, P: Ideal) -> bool:
    """``ab in P`` implies ``a in P`` or ``b in P``, and ``P != R``."""
    m = P.members
    if m.all():
        return False
    return bool((~m[R.mul] | m[:, None] | m[None, :]).all())


def _require_prime(L: IdealLattice, P: Ideal) -> int:
    p = L.index(P)
    if not _is_prime_index(L, p):
        raise NotPrimeError(f"{P} is not a prime ideal")
    return p


def n_of_p(R: FiniteRing, P: Ideal, L: IdealLattice | None = None) -> Ideal:
    """``{x : x*s == 0 for some s outside P}``."""
    L = L if L is not None else enumerate_ideals(R)
    _require_prime(L, P)
    outside = ~P.members
    killed = (R.mul[:, outside] == R.zero).any(axis=1)
    return make_ideal(R, killed)


@dataclass(frozen=True)
class LocalizationResult:
    local_ring: FiniteRing
    map: RingHom
    kernel: Ideal


def localize(R: FiniteRing, P: Ideal, L: IdealLattice | None = None) -> LocalizationResult:
    """Fractions ``r/s`` with ``s`` outside ``P``, identified when ``r s' - r' s`` lies in N(P).

    Classes are numbered in order of their first pair ``(r, s)`` scanning
    ``r`` fastest; ``r/1`` gives the canonical map.
    """
    if not R.has_unity:
        raise NotUnitalError("localization needs an identity element")
    L = L if L is not None else enumerate_ideals(R)
    _require_prime(L, P)
    N = n_of_p(R, P, L)
    inN = N.members
    svals = np.flatnonzero(~P.members)
    # pair (r, s_pos) lives at flat index s_pos * n + r
    n = R.order
    rr = np.tile(np.arange(n), svals.size)
    ss = np.repeat(svals, n)
    cls = np.full(rr.size, -1, dtype=np.int64)
    reps = []
    while (cls < 0).any():
        i = int(np.argmax(cls < 0))
        r0, s0 = rr[i], ss[i]
        same = inN[R.sub(R.mul[rr, s0], R.mul[r0, ss])]
        hit = same & (cls < 0)
        cls[hit] = len(reps)
        reps.append((int(r0), int(s0)))
    k = len(reps)
    spos = np.full(n, -1, dtype=np.int64)
    spos[svals] = np.arange(svals.size)

    def class_of(r, s):
        return cls[spos[s] * n + r]

    rep_r = np.array([r for r, _ in reps])
    rep_s = np.array([s for _, s in reps])
    a_r, b_r = rep_r[:, None], rep_r[None, :]
    a_s, b_s = rep_s[:, None], rep_s[None, :]
    denom = R.mul[a_s, b_s]
    add = class_of(R.add[R.mul[a_r, b_s], R.mul[b_r, a_s]], denom)
    mul = class_of(R.mul[a_r, b_r], denom)
    one = R.unity
    local = FiniteRing(add, mul, zero=int(class_of(R.zero, one)), unity=int(class_of(one, one)), label=f"{R.label}_P({','.join(map(str, P.generators))})")
    phi = RingHom(R, local, class_of(np.arange(n), one), unital=True)
    kernel = make_ideal(R, phi.kernel)
    if kernel != N:  # pragma: no cover - guarded invariant
        raise AssertionError("localization kernel differs from N(P)")
    return LocalizationResult(local, phi, kernel)


def radical(I: Ideal, L: IdealLattice) -> Ideal:
    """Intersection of the primes containing ``I`` (the whole ring if there are none)."""
    spec = prime_ideals(L)
    i = L.index(I)
    above = [p for p in spec.primes if L.leq[i, p]]
    if not above and i != L.top:
        log.warning("%s: no prime ideal contains %s; radical taken as the whole ring", L.ring.label, I.elements())
    out = L.top
    for p in above:
        out = int(L.meet[out, p])
    return L[out]


def radical_by_powers(R: FiniteRing, I: Ideal) -> Ideal:
    """Oracle: ``{x : x**k in I for some 1 <= k <= |R|}``."""
    hit = I.members.copy()
    y = np.arange(R.order)
    for _ in range(R.order):
        y = R.mul[y, np.arange(R.order)]
        hit |= I.members[y]
    return make_ideal(R, hit)


# ---------------------------------------------------------------------------
# decomposition into local factors
# ---------------------------------------------------------------------------


def primitive_idempotents(R: FiniteRing) -> list[int]:
    """Nonzero idempotents with no nonzero idempotent strictly below (``f <= e`` iff ``fe == f``)."""
    es = [e for e in R.idempotents if e != R.zero]
    return [e for e in es if not any(f != e and R.mul[f, e] == f for f in es)]


def decompose(R: FiniteRing) -> list[tuple[int, FiniteRing]]:
    """Split a unital ring along its primitive idempotents into factors ``eR``.

    Raises ValueError if the primitive idempotents are not a complete
    orthogonal family, which cannot happen for finite unital commutative rings.
    """
    if not R.has_unity:
        raise NotUnitalError("decomposition needs an identity element")
    prims = primitive_idempotents(R)
    total = R.zero
    for i, e in enumerate(prims):
        total = int(R.add[total, e])
        for f in prims[i + 1 :]:
            if R.mul[e, f] != R.zero:
                raise ValueError(f"idempotents {e} and {f} are not orthogonal")
    if not R.is_zero_ring and total != R.unity:
        raise ValueError("primitive idempotents do not sum to 1")
    return [(e, corner_ring(R, e)[0]) for e in prims]


def factor_label(S: FiniteRing) -> str:
    """``Z<n>`` when the factor is cyclic (additive order of 1 equals the order)."""
    if S.has_unity and S.additive_order(S.unity) == S.order:
        return f"Z{S.order}"
    return f"local[{S.order}]"


def is_spir_or_field(S: FiniteRing, L: IdealLattice | None = None) -> bool:
    """Local with chain ideals and nilpotent maximal ideal (a field is the case ``m = 0``)."""
    L = L if L is not None else enumerate_ideals(S)
    if not L.is_chain() or len(maximal_ideals(L)) != 1:
        return False
    m = maximal_ideals(L)[0]
    power = m
    for _ in range(L.size):
        if power == L.zero:
            return True
        power = int(L.prod[power, m])
    return power == L.zero


# ---------------------------------------------------------------------------
# the prime-ideal properties of BL-rings
# ---------------------------------------------------------------------------

SPECTRUM_ITEMS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")


def _comparable(L: IdealLattice, p: int, q: int) -> bool:
    return bool(L.leq[p, q] or L.leq[q, p])


def _crt_surjective(R: FiniteRing, L: IdealLattice, p: int, q: int) -> bool:
    _, hp = quotient_ring(R, L[p])
    _, hq = quotient_ring(R, L[q])
    images = set(zip(hp.map.tolist(), hq.map.tolist()))
    return len(images) == hp.target.order * hq.target.order


def check_spectrum_props(R: FiniteRing, L: IdealLattice, bl_ring: bool | None = None, is_local: bool | None = None) -> list[AxiomVerdict]:
    """Items (i)-(viii) for a BL-ring, each tested literally on the finite ring."""
    if bl_ring is None:
        from .axioms import check_blr1, check_blr2

        bl_ring = bool(check_blr1(L).holds and check_blr2(L).holds)
    if not bl_ring:
        return [AxiomVerdict.not_applicable(f"P4.3({k})", "not a BL-ring") for k in SPECTRUM_ITEMS]
    spec = prime_ideals(L)
    primes = spec.primes
    if is_local is None:
        is_local = R.is_zero_ring or len(maximal_ideals(L)) == 1
    out = []

    bad = next(((i, p) for i in range(L.size) for p in primes if not (L.leq[i, p] or L.res[i, p] == p)), None)
    out.append(AxiomVerdict.ok("P4.3(i)") if bad is None else AxiomVerdict.fail("P4.3(i)", bad))

    bad = next((i for i in range(L.size) if i != L.top and not any(L.leq[i, p] for p in primes)), None)
    out.append(AxiomVerdict.ok("P4.3(ii)") if bad is None else AxiomVerdict.fail("P4.3(ii)", (bad,)))

    pairs = [(p, q) for p in primes for q in primes if p < q and not _comparable(L, p, q)]
    bad = next(((p, q) for p, q in pairs if L.sum[p, q] != L.top), None)
    out.append(AxiomVerdict.ok("P4.3(iii)") if bad is None else AxiomVerdict.fail("P4.3(iii)", bad))

    mins = spec.minimal_primes
    bad = next(((p, q) for p in mins for q in mins if p < q and L.sum[p, q] != L.top), None)
    out.append(AxiomVerdict.ok("P4.3(iv)") if bad is None else AxiomVerdict.fail("P4.3(iv)", bad))

    # proper ideals only: with I = R any two primes lie below I
    bad = next(
        (
            (i, p, q)
            for i in range(L.top)
            for p in primes
            for q in primes
            if p < q and L.leq[p, i] and L.leq[q, i] and not _comparable(L, p, q)
        ),
        None,
    )
    out.append(AxiomVerdict.ok("P4.3(v)") if bad is None else AxiomVerdict.fail("P4.3(v)", bad))

    if not is_local:
        out.append(AxiomVerdict.not_applicable("P4.3(vi)", "ring is not local"))
    else:
        out.append(_check_local_powers(L, primes))

    if not R.has_unity:
        out.append(AxiomVerdict.not_applicable("P4.3(vii)", "ring has no identity"))
    else:
        bad = next(((p, q) for p, q in pairs if not _crt_surjective(R, L, p, q)), None)
        out.append(AxiomVerdict.ok("P4.3(vii)") if bad is None else AxiomVerdict.fail("P4.3(vii)", bad))

    if not R.has_unity:
        out.append(AxiomVerdict.not_applicable("P4.3(viii)", "ring has no identity"))
    else:
        factors = decompose(R)
        bad = next((e for e, S in factors if not is_spir_or_field(S)), None)
        note = " x ".join(factor_label(S) for _, S in factors)
        out.append(AxiomVerdict.ok("P4.3(viii)", note) if bad is None else AxiomVerdict.fail("P4.3(viii)", (bad,), note))
    return out


def _check_local_powers(L: IdealLattice, primes) -> AxiomVerdict:
    bad = next(((p, q) for p in primes for q in primes if not _comparable(L, p, q)), None)
    if bad is not None:
        return AxiomVerdict.fail("P4.3(vi)", bad, "primes not a chain")
    if not primes:
        return AxiomVerdict.ok("P4.3(vi)", "no primes (zero ring)")
    m = maximal_ideals(L)[0]
    powers = [L.top]
    for _ in range(L.size):
        powers.append(int(L.prod[powers[-1], m]))
    missing = next((i for i in range(L.size) if i not in powers), None)
    if missing is not None:
        return AxiomVerdict.fail("P4.3(vi)", (missing,), "ideal is not a power of the maximal ideal")
    return AxiomVerdict.ok("P4.3(vi)")


def check_global_embedding(R: FiniteRing, L: IdealLattice, multiplication: bool | None = None) -> list[AxiomVerdict]:
    """Intersection of all N(P) is zero; ``R -> prod R_P`` is injective with SPIR/field factors."""
    from .ring_core import is_generated_by_idempotents

    spec = prime_ideals(L)
    out = []
    if not is_generated_by_idempotents(R):
        out.append(AxiomVerdict.not_applicable("N(P)_meet_zero", "not generated by idempotents"))
    else:
        meet = np.ones(R.order, dtype=np.bool_)
        for p in spec.primes:
            meet &= n_of_p(R, L[p], L).members
        nonzero = np.flatnonzero(meet & (np.arange(R.order) != R.zero))
        out.append(AxiomVerdict.ok("N(P)_meet_zero") if nonzero.size == 0 else AxiomVerdict.fail("N(P)_meet_zero", (int(nonzero[0]),)))

    if multiplication is None:
        from .axioms import check_multiplication

        multiplication = bool(check_multiplication(L).holds)
    if not (multiplication and R.has_unity):
        out.append(AxiomVerdict.not_applicable("embedding", "needs a multiplication ring with identity"))
        return out
    locs = [localize(R, L[p], L) for p in spec.primes]
    images = np.stack([loc.map.map for loc in locs], axis=1) if locs else np.zeros((R.order, 0), dtype=np.int64)
    distinct = len({tuple(row) for row in images.tolist()})
    if distinct != R.order:
        rows = {}
        clash = (0, 0)
        for x, row in enumerate(map(tuple, images.tolist())):
            if row in rows:
                clash = (rows[row], x)
                break
            rows[row] = x
        out.append(AxiomVerdict.fail("embedding", clash, "map into the product of localizations is not injective"))
        return out
    bad = next((p for p, loc in zip(spec.primes, locs) if not is_spir_or_field(loc.local_ring)), None)
    out.append(AxiomVerdict.ok("embedding") if bad is None else AxiomVerdict.fail("embedding", (bad,), "localization is not a SPIR or field"))
    return out
