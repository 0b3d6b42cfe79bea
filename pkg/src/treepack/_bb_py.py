"""Pure-Python branch-and-bound kernel for maximum disjoint set packing.

Same contract as the compiled kernel in _bb.pyx; selected at import time by
the oracle module when the extension is unavailable.
"""

from __future__ import annotations

BACKEND = "python"


def max_disjoint(masks: list[int], all_mask: int, size: int) -> tuple[int, tuple[int, ...]]:
    """Maximum number of pairwise vertex-disjoint candidates.

    masks holds one vertex bitmask per candidate, size the vertex count of
    every candidate.  Branches on the lowest-id free vertex (cover it with
    one of its candidates or give it up), pruning whenever
    count + free_vertices // size cannot beat the incumbent.  Returns the
    maximum and the lexicographically first witness of selected indices.
    """
    n_bits = all_mask.bit_length()
    by_vertex: list[list[int]] = [[] for _ in range(n_bits)]
    for idx, m in enumerate(masks):
        mm = m
        while mm:
            low = mm & -mm
            by_vertex[low.bit_length() - 1].append(idx)
            mm ^= low
    best = 0
    best_sel: tuple[int, ...] = ()
    sel: list[int] = []

    def rec(blocked: int, count: int):
        nonlocal best, best_sel
        free = all_mask & ~blocked
        if count > best:
            best = count
            best_sel = tuple(sel)
        if count + free.bit_count() // size <= best:
            return
        low = free & -free
        v = low.bit_length() - 1
        for idx in by_vertex[v]:
            m = masks[idx]
            if m & blocked:
                continue
            sel.append(idx)
            rec(blocked | m, count + 1)
            sel.pop()
        rec(blocked | low, count)

    if all_mask:
        rec(0, 0)
    return best, best_sel
