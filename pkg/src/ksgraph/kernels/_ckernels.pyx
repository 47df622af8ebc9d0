# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels, limited to 64 positions.

Same contracts as ``_pykernels``; see there for the algorithms.
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

MAX_POSITIONS = 64


cdef inline u64 _full(int n) nogil:
    if n >= 64:
        return ~(<u64>0)
    return ((<u64>1) << n) - 1


cdef void _expand(const u64* adj, u64 r, u64 p, u64 x, list out):
    cdef u64 m, low, cand, nk, pivot_adj
    cdef int k, c, best
    if p == 0:
        if x == 0:
            out.append(r)
        return
    best = -1
    pivot_adj = 0
    m = p | x
    while m:
        k = __builtin_ctzll(m)
        m &= m - 1
        c = __builtin_popcountll(p & adj[k])
        if c > best:
            best = c
            pivot_adj = adj[k]
    cand = p & ~pivot_adj
    while cand:
        k = __builtin_ctzll(cand)
        low = (<u64>1) << k
        cand &= cand - 1
        nk = adj[k]
        _expand(adj, r | low, p & nk, x & nk, out)
        p &= ~low
        x |= low


def maximal_cliques(list adj):
    cdef int n = len(adj)
    cdef int i
    cdef u64* a
    cdef list out = []
    if n == 0:
        return out
    if n > 64:
        raise OverflowError("compiled kernel handles at most 64 positions")
    a = <u64*> malloc(n * sizeof(u64))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            a[i] = <u64> adj[i]
        _expand(a, 0, _full(n), 0, out)
    finally:
        free(a)
    return out


cdef struct SearchState:
    const u64* bases
    int nbases
    int n
    long long nodes
    long long branches


cdef bint _propagate(SearchState* s, u64* ones, u64* zeros) nogil:
    cdef bint changed = True
    cdef int i
    cdef u64 b, on, rest, free_
    while changed:
        changed = False
        for i in range(s.nbases):
            b = s.bases[i]
            on = ones[0] & b
            if on:
                if on & (on - 1):
                    return False
                rest = b & ~ones[0] & ~zeros[0]
                if rest:
                    zeros[0] |= rest
                    changed = True
            else:
                free_ = b & ~zeros[0]
                if not free_:
                    return False
                if not (free_ & (free_ - 1)):
                    ones[0] |= free_
                    changed = True
    return True


cdef bint _search(SearchState* s, u64 ones, u64 zeros, u64* result) nogil:
    cdef int i, c, best_count
    cdef u64 b, free_, best, bit
    s.nodes += 1
    if not _propagate(s, &ones, &zeros):
        return False
    best = 0
    best_count = s.n + 1
    for i in range(s.nbases):
        b = s.bases[i]
        if b & ones:
            continue
        free_ = b & ~zeros
        c = __builtin_popcountll(free_)
        if c < best_count:
            best = free_
            best_count = c
    if not best:
        result[0] = ones
        return True
    bit = (<u64>1) << __builtin_ctzll(best)
    s.branches += 1
    if _search(s, ones | bit, zeros, result):
        return True
    return _search(s, ones, zeros | bit, result)


def ks_search(int n, list bases, ones=0, zeros=0):
    cdef SearchState s
    cdef u64* b
    cdef u64 result = 0
    cdef u64 o, z
    cdef int i
    cdef bint found
    cdef int nb = len(bases)
    if n > 64:
        raise OverflowError("compiled kernel handles at most 64 positions")
    o = <u64> ones
    z = <u64> zeros
    if o & z:
        return False, 0, 0, 0
    b = <u64*> malloc((nb if nb > 0 else 1) * sizeof(u64))
    if b == NULL:
        raise MemoryError()
    try:
        for i in range(nb):
            b[i] = <u64> bases[i]
        s.bases = b
        s.nbases = nb
        s.n = n
        s.nodes = 0
        s.branches = 0
        with nogil:
            found = _search(&s, o, z, &result)
    finally:
        free(b)
    if not found:
        return False, 0, s.nodes, s.branches
    return True, int(result), s.nodes, s.branches
