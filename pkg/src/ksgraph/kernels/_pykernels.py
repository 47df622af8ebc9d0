"""Pure-Python bitset kernels.

Node sets are Python ints used as bitsets: bit ``k`` stands for the node at
position ``k`` of the caller's ordering. No size limit applies here; the
compiled twin is restricted to 64 positions.
"""

from __future__ import annotations

import sys


def maximal_cliques(adj: list[int]) -> list[int]:
    """All maximal cliques of the graph given by neighbour masks ``adj``.

    ``adj[k]`` must not contain bit ``k``. Cliques are returned as masks in
    discovery order; callers sort them.
    """
    n = len(adj)
    if n == 0:
        return []
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p:
            if not x:
                out.append(r)
            return
        # pivot maximizing |P & N(u)|, lowest position on ties
        best = -1
        pivot = 0
        m = p | x
        while m:
            low = m & -m
            k = low.bit_length() - 1
            m ^= low
            c = (p & adj[k]).bit_count()
            if c > best:
                best, pivot = c, k
        cand = p & ~adj[pivot]
        while cand:
            low = cand & -cand
            k = low.bit_length() - 1
            cand ^= low
            nk = adj[k]
            expand(r | low, p & nk, x & nk)
            p &= ~low
            x |= low

    _with_recursion(n, expand, 0, (1 << n) - 1, 0)
    return out


def _propagate(bases: list[int], ones: int, zeros: int) -> tuple[int, int] | None:
    changed = True
    while changed:
        changed = False
        for b in bases:
            on = ones & b
            if on:
                if on & (on - 1):
                    return None
                rest = b & ~ones & ~zeros
                if rest:
                    zeros |= rest
                    changed = True
            else:
                free = b & ~zeros
                if not free:
                    return None
                if not free & (free - 1):
                    ones |= free
                    changed = True
    return ones, zeros


def ks_search(n: int, bases: list[int], ones: int = 0, zeros: int = 0) -> tuple[bool, int, int, int]:
    """Exactly-one-per-basis search with unit propagation.

    Returns ``(found, ones_mask, nodes, branches)``. Positions not in
    ``ones_mask`` take value 0 in the witness. Branching picks the unsatisfied
    basis with the fewest free positions (first in ``bases`` order on ties),
    then its lowest free position, trying 1 before 0.
    """
    if ones & zeros:
        return False, 0, 0, 0
    stats = [0, 0]

    def search(ones: int, zeros: int) -> int | None:
        stats[0] += 1
        state = _propagate(bases, ones, zeros)
        if state is None:
            return None
        ones, zeros = state
        best = 0
        best_count = n + 1
        for b in bases:
            if b & ones:
                continue
            free = b & ~zeros
            c = free.bit_count()
            if c < best_count:
                best, best_count = free, c
        if not best:
            return ones
        bit = best & -best
        stats[1] += 1
        found = search(ones | bit, zeros)
        if found is not None:
            return found
        return search(ones, zeros | bit)

    found = _with_recursion(n, search, ones, zeros)
    if found is None:
        return False, 0, stats[0], stats[1]
    return True, found, stats[0], stats[1]


def _with_recursion(depth: int, fn, *args):
    limit = sys.getrecursionlimit()
    need = 2 * depth + 100
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        return fn(*args)
    finally:
        if need > limit:
            sys.setrecursionlimit(limit)
