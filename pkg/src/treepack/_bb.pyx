# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled branch-and-bound kernel for maximum disjoint set packing.

Mirrors _bb_py.max_disjoint; the oracle imports whichever is available.
"""

from libc.stdlib cimport malloc, free

BACKEND = "compiled"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef struct Ctx:
    unsigned long long *masks
    int *by_vertex       # flattened candidate lists per vertex
    int *by_start        # offsets into by_vertex, length n_bits + 1
    unsigned long long all_mask
    int size
    int n
    int best
    int *sel
    int *best_sel


cdef void _rec(Ctx *ctx, unsigned long long blocked, int count) noexcept nogil:
    cdef unsigned long long free_mask = ctx.all_mask & ~blocked
    cdef unsigned long long low, m
    cdef int v, i, idx
    if count > ctx.best:
        ctx.best = count
        for i in range(count):
            ctx.best_sel[i] = ctx.sel[i]
    if count + __builtin_popcountll(free_mask) // ctx.size <= ctx.best:
        return
    low = free_mask & (~free_mask + 1)
    v = __builtin_ctzll(low)
    for i in range(ctx.by_start[v], ctx.by_start[v + 1]):
        idx = ctx.by_vertex[i]
        m = ctx.masks[idx]
        if m & blocked:
            continue
        ctx.sel[count] = idx
        _rec(ctx, blocked | m, count + 1)
    _rec(ctx, blocked | low, count)


def max_disjoint(masks, all_mask, size):
    """See _bb_py.max_disjoint."""
    cdef int n = len(masks)
    cdef unsigned long long amask = all_mask
    cdef int n_bits = 0
    cdef unsigned long long tmp = amask
    while tmp:
        n_bits += 1
        tmp >>= 1
    if amask == 0:
        return 0, ()

    cdef Ctx ctx
    ctx.all_mask = amask
    ctx.size = size
    ctx.n = n
    ctx.best = 0
    ctx.masks = <unsigned long long *> malloc(n * sizeof(unsigned long long))
    ctx.by_start = <int *> malloc((n_bits + 1) * sizeof(int))
    ctx.sel = <int *> malloc((n + 1) * sizeof(int))
    ctx.best_sel = <int *> malloc((n + 1) * sizeof(int))
    cdef int *counts = <int *> malloc(n_bits * sizeof(int))
    cdef int i, v
    cdef unsigned long long m, low
    try:
        for v in range(n_bits):
            counts[v] = 0
        for i in range(n):
            ctx.masks[i] = masks[i]
            m = ctx.masks[i]
            while m:
                low = m & (~m + 1)
                counts[__builtin_ctzll(low)] += 1
                m ^= low
        ctx.by_start[0] = 0
        for v in range(n_bits):
            ctx.by_start[v + 1] = ctx.by_start[v] + counts[v]
        ctx.by_vertex = <int *> malloc(max(ctx.by_start[n_bits], 1) * sizeof(int))
        try:
            for v in range(n_bits):
                counts[v] = 0
            for i in range(n):
                m = ctx.masks[i]
                while m:
                    low = m & (~m + 1)
                    v = __builtin_ctzll(low)
                    ctx.by_vertex[ctx.by_start[v] + counts[v]] = i
                    counts[v] += 1
                    m ^= low
            _rec(&ctx, 0, 0)
            sel = tuple(ctx.best_sel[i] for i in range(ctx.best))
            return ctx.best, sel
        finally:
            free(ctx.by_vertex)
    finally:
        free(counts)
        free(ctx.best_sel)
        free(ctx.sel)
        free(ctx.by_start)
        free(ctx.masks)
