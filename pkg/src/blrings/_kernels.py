"""Inner loops over ring operation tables.

Every kernel exists twice: a numba ``@njit`` version and a pure numpy
version with identical semantics. The public names bound at module level
point at the numba versions unless ``BLRINGS_DISABLE_NUMBA`` is set to a
truthy value (or numba cannot be imported), in which case the numpy path is
used. Both sets are always reachable as ``numba_impl`` / ``numpy_impl`` so
tests and ``benchmarks/bench_kernels.py`` can compare them.

Conventions: ``add`` and ``mul`` are ``(n, n)`` int32 tables, subsets of the
carrier are boolean vectors of length ``n``, and a stack of ``k`` subsets is
a ``(k, n)`` boolean matrix.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

_FLAG = "BLRINGS_DISABLE_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _flag_set() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


JIT_ENABLED = HAVE_NUMBA and not _flag_set()


# ---------------------------------------------------------------------------
# numpy reference path
# ---------------------------------------------------------------------------


def _np_additive_closure(add, mask):
    mask = mask.copy()
    while True:
        idx = np.flatnonzero(mask)
        new = np.zeros_like(mask)
        new[add[np.ix_(idx, idx)].ravel()] = True
        if not (new & ~mask).any():
            return mask
        mask |= new


def _np_ideal_closure(add, mul, zero, mask):
    out = mask.copy()
    out[zero] = True
    idx = np.flatnonzero(out)
    out[mul[:, idx].ravel()] = True
    return _np_additive_closure(add, out)


def _np_principal_masks(add, mul, zero):
    n = add.shape[0]
    out = np.zeros((n, n), dtype=np.bool_)
    for x in range(n):
        m = np.zeros(n, dtype=np.bool_)
        m[x] = True
        out[x] = _np_ideal_closure(add, mul, zero, m)
    return out


def _np_sum_mask(add, a, b):
    out = np.zeros(a.shape[0], dtype=np.bool_)
    out[add[np.ix_(np.flatnonzero(a), np.flatnonzero(b))].ravel()] = True
    return out


def _np_product_mask(add, mul, zero, a, b):
    out = np.zeros(a.shape[0], dtype=np.bool_)
    out[zero] = True
    out[mul[np.ix_(np.flatnonzero(a), np.flatnonzero(b))].ravel()] = True
    return _np_additive_closure(add, out)


def _np_residuum_mask(mul, a, b):
    return b[mul[:, np.flatnonzero(a)]].all(axis=1)


def _np_op_masks(add, mul, zero, members):
    k, n = members.shape
    sums = np.zeros((k, k, n), dtype=np.bool_)
    prods = np.zeros((k, k, n), dtype=np.bool_)
    res = np.zeros((k, k, n), dtype=np.bool_)
    for i in range(k):
        for j in range(k):
            if j >= i:
                sums[i, j] = _np_sum_mask(add, members[i], members[j])
                prods[i, j] = _np_product_mask(add, mul, zero, members[i], members[j])
                sums[j, i] = sums[i, j]
                prods[j, i] = prods[i, j]
            res[i, j] = _np_residuum_mask(mul, members[i], members[j])
    return sums, prods, res


def _np_subset_ideals(add, mul, zero):
    n = add.shape[0]
    masks = np.arange(1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n, dtype=np.int64)[None, :]) & 1).astype(np.bool_)
    ok = bits[:, zero].copy()
    for a in range(n):
        for b in range(n):
            ok &= ~(bits[:, a] & bits[:, b]) | bits[:, add[a, b]]
            ok &= ~bits[:, b] | bits[:, mul[a, b]]
    return masks[ok]


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    njit = numba.njit(cache=True, nogil=True)

    @njit
    def _nb_additive_closure(add, mask):
        n = mask.shape[0]
        out = mask.copy()
        stack = np.empty(n, dtype=np.int64)
        members = np.empty(n, dtype=np.int64)
        top = 0
        count = 0
        for x in range(n):
            if out[x]:
                stack[top] = x
                top += 1
        while top > 0:
            top -= 1
            a = stack[top]
            members[count] = a
            count += 1
            for t in range(count):
                for c in (add[a, members[t]], add[members[t], a]):
                    if not out[c]:
                        out[c] = True
                        stack[top] = c
                        top += 1
        return out

    @njit
    def _nb_ideal_closure(add, mul, zero, mask):
        n = mask.shape[0]
        out = mask.copy()
        out[zero] = True
        for x in range(n):
            if mask[x]:
                for r in range(n):
                    out[mul[r, x]] = True
        return _nb_additive_closure(add, out)

    @njit
    def _nb_principal_masks(add, mul, zero):
        n = add.shape[0]
        out = np.zeros((n, n), dtype=np.bool_)
        for x in range(n):
            m = np.zeros(n, dtype=np.bool_)
            m[x] = True
            out[x] = _nb_ideal_closure(add, mul, zero, m)
        return out

    @njit
    def _nb_sum_mask(add, a, b):
        n = a.shape[0]
        out = np.zeros(n, dtype=np.bool_)
        for x in range(n):
            if a[x]:
                for y in range(n):
                    if b[y]:
                        out[add[x, y]] = True
        return out

    @njit
    def _nb_product_mask(add, mul, zero, a, b):
        n = a.shape[0]
        out = np.zeros(n, dtype=np.bool_)
        out[zero] = True
        for x in range(n):
            if a[x]:
                for y in range(n):
                    if b[y]:
                        out[mul[x, y]] = True
        return _nb_additive_closure(add, out)

    @njit
    def _nb_residuum_mask(mul, a, b):
        n = a.shape[0]
        out = np.ones(n, dtype=np.bool_)
        for x in range(n):
            for y in range(n):
                if a[y] and not b[mul[x, y]]:
                    out[x] = False
                    break
        return out

    @njit
    def _nb_op_masks(add, mul, zero, members):
        k, n = members.shape
        sums = np.zeros((k, k, n), dtype=np.bool_)
        prods = np.zeros((k, k, n), dtype=np.bool_)
        res = np.zeros((k, k, n), dtype=np.bool_)
        for i in range(k):
            for j in range(k):
                if j >= i:
                    sums[i, j] = _nb_sum_mask(add, members[i], members[j])
                    prods[i, j] = _nb_product_mask(add, mul, zero, members[i], members[j])
                    sums[j, i] = sums[i, j]
                    prods[j, i] = prods[i, j]
                res[i, j] = _nb_residuum_mask(mul, members[i], members[j])
        return sums, prods, res

    @njit
    def _nb_subset_ideals(add, mul, zero):
        n = add.shape[0]
        total = np.int64(1) << n
        found = np.empty(64, dtype=np.int64)
        count = 0
        for m in range(total):
            if not (m >> zero) & 1:
                continue
            ok = True
            for a in range(n):
                if not (m >> a) & 1:
                    continue
                for b in range(n):
                    if not (m >> b) & 1:
                        # ideal absorption: r*a must stay inside for every r
                        if not (m >> mul[b, a]) & 1:
                            ok = False
                            break
                        continue
                    if not (m >> add[a, b]) & 1 or not (m >> mul[b, a]) & 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                if count == found.shape[0]:
                    grown = np.empty(2 * count, dtype=np.int64)
                    grown[:count] = found
                    found = grown
                found[count] = m
                count += 1
        return found[:count].copy()


numpy_impl = SimpleNamespace(
    additive_closure=_np_additive_closure,
    ideal_closure=_np_ideal_closure,
    principal_masks=_np_principal_masks,
    sum_mask=_np_sum_mask,
    product_mask=_np_product_mask,
    residuum_mask=_np_residuum_mask,
    op_masks=_np_op_masks,
    subset_ideals=_np_subset_ideals,
)

if HAVE_NUMBA:
    numba_impl = SimpleNamespace(
        additive_closure=_nb_additive_closure,
        ideal_closure=_nb_ideal_closure,
        principal_masks=_nb_principal_masks,
        sum_mask=_nb_sum_mask,
        product_mask=_nb_product_mask,
        residuum_mask=_nb_residuum_mask,
        op_masks=_nb_op_masks,
        subset_ideals=_nb_subset_ideals,
    )
else:  # pragma: no cover
    numba_impl = numpy_impl

_active = numba_impl if JIT_ENABLED else numpy_impl

additive_closure = _active.additive_closure
ideal_closure = _active.ideal_closure
principal_masks = _active.principal_masks
sum_mask = _active.sum_mask
product_mask = _active.product_mask
residuum_mask = _active.residuum_mask
op_masks = _active.op_masks
subset_ideals = _active.subset_ideals


def backend() -> str:
    """Name of the kernel set currently bound at module level."""
    return "numba" if JIT_ENABLED else "numpy"
