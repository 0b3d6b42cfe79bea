"""Deterministic generators for the tightness families.

Each generator records the expected optimum of its output as a rational so
graph files can carry it in a comment line ("expected-optimum <p>/<q>") and
the verifier can check tightness without recomputation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, GraphError


@dataclass(frozen=True)
class GeneratedGraph:
    graph: Graph
    expected_optimum: Fraction | None

    def comments(self) -> list[str]:
        if self.expected_optimum is None:
            return []
        p, q = self.expected_optimum.numerator, self.expected_optimum.denominator
        return [f"expected-optimum {p}/{q}"]


def gen_ts_tree(s: int, expansions: int) -> Graph:
    """A tree whose every non-leaf vertex has degree s.

    Starts from the s-edge star and repeatedly attaches s-1 new leaves to
    the current minimum-id leaf.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    if expansions < 0:
        raise ValueError("expansions must be non-negative")
    edges = [(1, i) for i in range(2, s + 2)]
    leaves = set(range(2, s + 2))
    next_id = s + 2
    for _ in range(expansions):
        target = min(leaves)
        leaves.remove(target)
        for _ in range(s - 1):
            edges.append((target, next_id))
            leaves.add(next_id)
            next_id += 1
    return Graph(range(1, next_id), edges)


def gen_tsk(s: int, k: int, expansions: int) -> GeneratedGraph:
    """Subdivide a gen_ts_tree: non-dangling edges with k vertices,
    dangling edges (those meeting a leaf) with k-1 vertices.

    The expected optimum (v - k)/(sk - k + 1) is exact for this family.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    tree = gen_ts_tree(s, expansions)
    degree = {x: tree.degree(x) for x in tree.vertices()}
    next_id = tree.max_id() + 1
    edges = []
    for u, w in tree.edges():
        dangling = degree[u] == 1 or degree[w] == 1
        inner = k - 1 if dangling else k
        chain = [u] + list(range(next_id, next_id + inner)) + [w]
        next_id += inner
        edges.extend((chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    verts = set(tree.vertices()) | set(range(tree.max_id() + 1, next_id))
    graph = Graph(verts, edges)
    expected = Fraction(graph.v() - k, s * k - k + 1)
    return GeneratedGraph(graph, expected)


def gen_subdivision(base: Graph, k: int) -> GeneratedGraph:
    """Subdivide every edge of a degree-[3,s] multigraph with exactly k
    vertices.  The result is simple and packs exactly v(base) disjoint
    k-edge paths."""
    if k < 1:
        raise ValueError("k must be at least 1")
    for x in base.vertices():
        if base.degree(x) < 3:
            raise GraphError(f"base vertex {x} has degree {base.degree(x)} < 3")
    next_id = base.max_id() + 1
    edges = []
    for u, w in base.edges():
        chain = [u] + list(range(next_id, next_id + k)) + [w]
        next_id += k
        edges.extend((chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    verts = set(base.vertices()) | set(range(base.max_id() + 1, next_id))
    graph = Graph(verts, edges)
    return GeneratedGraph(graph, Fraction(base.v()))


def gen_y() -> Graph:
    """Three disjoint 5-cycles joined to one new hub vertex by one edge
    each: 16 vertices, 18 edges, the tight case of the v/4 bound."""
    edges = []
    for start in (1, 6, 11):
        ring = list(range(start, start + 5))
        edges.extend((ring[i], ring[(i + 1) % 5]) for i in range(5))
    hub = 16
    edges.extend((hub, a) for a in (1, 6, 11))
    return Graph(range(1, 17), edges)
