"""Exact maximum packings on small graphs by exhaustive candidate
enumeration plus branch and bound.

This is the ground truth used by the lifting tests, the tightness checks
and the packers' small-instance fallback.  The search kernel is the
compiled extension when built, otherwise the pure-Python twin.
"""

from __future__ import annotations

from itertools import combinations

from .graph import Graph, GraphError
from .packing import Component, Packing, normalize_component

try:
    from . import _bb as _kernel
except ImportError:  # extension not built; fall back to pure Python
    from . import _bb_py as _kernel

from . import _bb_py

DEFAULT_MAX_VERTICES = 20
DEFAULT_MAX_CANDIDATES = 40


class TooLargeError(GraphError):
    """Instance exceeds the oracle's enumeration limits."""


def kernel_backend() -> str:
    """Which search kernel is active: "compiled" or "python"."""
    return _kernel.BACKEND


def _kernel_for(backend: str | None):
    if backend is None:
        return _kernel
    if backend == "python":
        return _bb_py
    if backend == "compiled":
        if _kernel.BACKEND != "compiled":
            raise GraphError("compiled kernel requested but not built")
        return _kernel
    raise ValueError(f"unknown backend {backend!r}")


def _component_is_tree(edges, verts) -> bool:
    adj = {v: [] for v in verts}
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def enumerate_ktrees(
    graph: Graph,
    k: int,
    paths_only: bool = False,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_candidates: int | None = DEFAULT_MAX_CANDIDATES,
) -> list[Component]:
    """All connected acyclic k-edge subgraphs, in canonical edge order.

    With paths_only, keep only the ones with maximum degree two.  Refuses
    instances over the vertex or candidate-count limits rather than
    grinding silently.
    """
    graph._require_simple()
    if k < 1:
        raise ValueError("k must be at least 1")
    if max_vertices is not None and graph.v() > max_vertices:
        raise TooLargeError(f"{graph.v()} vertices exceeds oracle limit {max_vertices}")
    out: list[Component] = []
    if k == 2:
        # a 2-edge path is determined by its center and two neighbors
        for b in graph.vertices():
            nbrs = graph.neighbors(b)
            for a, c in combinations(nbrs, 2):
                out.append(normalize_component([(a, b), (b, c)]))
    else:
        for chosen in combinations(graph.edges(), k):
            verts = {x for e in chosen for x in e}
            if len(verts) != k + 1:
                continue
            if paths_only and any(
                sum(1 for e in chosen if v in e) > 2 for v in verts
            ):
                continue
            if not _component_is_tree(chosen, verts):
                continue
            out.append(normalize_component(chosen))
    out.sort()
    if max_candidates is not None and len(out) > max_candidates:
        raise TooLargeError(
            f"{len(out)} candidate subtrees exceed oracle limit {max_candidates}"
        )
    return out


def _solve(graph: Graph, k: int, paths_only: bool, max_vertices, max_candidates, backend):
    candidates = enumerate_ktrees(
        graph, k, paths_only=paths_only,
        max_vertices=max_vertices, max_candidates=max_candidates,
    )
    verts = graph.vertices()
    bit = {v: i for i, v in enumerate(verts)}
    masks = []
    for comp in candidates:
        m = 0
        for u, w in comp:
            m |= 1 << bit[u]
            m |= 1 << bit[w]
        masks.append(m)
    all_mask = (1 << len(verts)) - 1
    kern = _kernel_for(backend)
    best, sel = kern.max_disjoint(masks, all_mask, k + 1)
    witness = Packing.of([candidates[i] for i in sel])
    assert witness.size == best
    return best, witness


def oracle_tau(
    graph: Graph,
    k: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_candidates: int | None = DEFAULT_MAX_CANDIDATES,
    backend: str | None = None,
) -> tuple[int, Packing]:
    """Exact maximum number of disjoint k-edge trees, with one witness."""
    return _solve(graph, k, False, max_vertices, max_candidates, backend)


def oracle_lambda_k(
    graph: Graph,
    k: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_candidates: int | None = DEFAULT_MAX_CANDIDATES,
    backend: str | None = None,
) -> tuple[int, Packing]:
    """Exact maximum number of disjoint k-edge paths, with one witness."""
    return _solve(graph, k, True, max_vertices, max_candidates, backend)
