"""Backtracking isomorphism search between finite algebras given by tables.

Used by the ring isomorphism oracle and by ``structure.iso_search``. Each
assignment ``x -> y`` is propagated through every binary operation against
all already-assigned elements, so once a generating set is mapped the rest
is forced and contradictions surface immediately.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Hashable, Sequence

from .errors import InconclusiveSearch

DEFAULT_LIMIT = 10**7


def find_isomorphism(
    ops1: Sequence,
    ops2: Sequence,
    sig1: Sequence[Hashable],
    sig2: Sequence[Hashable],
    fixed: Sequence[tuple[int, int]] = (),
    limit: int = DEFAULT_LIMIT,
) -> list[int] | None:
    """Return ``f`` with ``f[op1[a][b]] == op2[f[a]][f[b]]`` for every op, or None.

    ``sig1``/``sig2`` are per-element invariants; only equal-signature
    elements may correspond. ``fixed`` pins pairs (constants such as zero or
    top). Raises :class:`InconclusiveSearch` after ``limit`` branch attempts.
    """
    n = len(sig1)
    if n != len(sig2) or len(ops1) != len(ops2):
        return None
    if Counter(sig1) != Counter(sig2):
        return None
    t1 = [[list(map(int, row)) for row in op] for op in ops1]
    t2 = [[list(map(int, row)) for row in op] for op in ops2]
    by_sig: dict = {}
    for y, s in enumerate(sig2):
        by_sig.setdefault(s, []).append(y)

    f = [-1] * n
    g = [-1] * n
    assigned: list[int] = []
    budget = [0]

    def push(x: int, y: int, trail: list[int]) -> bool:
        queue = deque([(x, y)])
        while queue:
            u, v = queue.popleft()
            if f[u] == v:
                continue
            if f[u] != -1 or g[v] != -1 or sig1[u] != sig2[v]:
                return False
            f[u] = v
            g[v] = u
            trail.append(u)
            assigned.append(u)
            for a in list(assigned):
                fa = f[a]
                for op1, op2 in zip(t1, t2):
                    queue.append((op1[u][a], op2[v][fa]))
                    queue.append((op1[a][u], op2[fa][v]))
        return True

    def undo(trail: list[int]) -> None:
        for u in reversed(trail):
            g[f[u]] = -1
            f[u] = -1
            assigned.pop()

    root: list[int] = []
    for x, y in fixed:
        if not push(x, y, root):
            return None

    order = sorted(range(n), key=lambda x: (len(by_sig[sig1[x]]), x))

    def solve(pos: int) -> bool:
        while pos < n and f[order[pos]] != -1:
            pos += 1
        if pos == n:
            return True
        x = order[pos]
        for y in by_sig[sig1[x]]:
            if g[y] != -1:
                continue
            budget[0] += 1
            if budget[0] > limit:
                raise InconclusiveSearch(f"isomorphism search exceeded {limit} partial assignments")
            trail: list[int] = []
            if push(x, y, trail) and solve(pos + 1):
                return True
            undo(trail)
        return False

    if solve(0):
        return list(f)
    return None
