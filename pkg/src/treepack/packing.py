"""Packings (vertex-disjoint k-edge trees) and bound certificates.

A packing component is a tuple of edges forming one tree with a fixed edge
count; for the 2-edge-path packers every component is a path on three
vertices.  Bounds are kept as exact rationals so certificate comparisons
never touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, GraphError, component_vertex_sets

THEOREM_TAGS = ("Main1", "DMain1", "main1")


class PackingError(GraphError):
    """A packing failed validation against its graph."""


Edge = tuple[int, int]
Component = tuple[Edge, ...]


def normalize_component(edges) -> Component:
    out = tuple(sorted((min(u, w), max(u, w)) for u, w in edges))
    return out


def path3(a: int, b: int, c: int) -> Component:
    """The 2-edge path a-b-c (center b)."""
    return normalize_component([(a, b), (b, c)])


def path3_center(component: Component) -> int:
    (a, b), (c, d) = component
    if a in (c, d):
        return a
    return b


def consecutive_triples(sequence) -> list[Component]:
    """Pack a path given by its vertex sequence with floor(len/3) 2-edge
    paths on consecutive triples."""
    seq = list(sequence)
    return [path3(seq[i], seq[i + 1], seq[i + 2]) for i in range(0, len(seq) - 2, 3)]


def component_vertices(component: Component) -> set[int]:
    return {x for e in component for x in e}


@dataclass(frozen=True)
class Packing:
    components: tuple[Component, ...]

    @staticmethod
    def of(components) -> "Packing":
        comps = tuple(sorted(normalize_component(c) for c in components))
        return Packing(comps)

    @property
    def size(self) -> int:
        return len(self.components)

    def vertices(self) -> set[int]:
        return {x for c in self.components for e in c for x in e}


def _is_tree(component: Component) -> bool:
    verts = component_vertices(component)
    if len(verts) != len(component) + 1:
        return False
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, w in component:
        adj[u].append(w)
        adj[w].append(u)
    seen = {next(iter(verts))}
    stack = [next(iter(verts))]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def _is_path(component: Component) -> bool:
    verts = component_vertices(component)
    degree: dict[int, int] = {v: 0 for v in verts}
    for u, w in component:
        degree[u] += 1
        degree[w] += 1
    return _is_tree(component) and max(degree.values()) <= 2


def validate_packing(graph: Graph, packing: Packing, k: int, paths_only: bool = False):
    """Raise PackingError unless every component is a k-edge tree of graph
    edges and components are pairwise vertex-disjoint."""
    seen: dict[int, int] = {}
    for idx, comp in enumerate(packing.components):
        if len(comp) != k:
            raise PackingError(f"component {idx} has {len(comp)} edges, expected {k}")
        if len(set(comp)) != len(comp):
            raise PackingError(f"component {idx} repeats an edge")
        for u, w in comp:
            if not graph.has_edge(u, w):
                raise PackingError(f"component {idx} uses missing edge ({u},{w})")
        if not _is_tree(comp):
            raise PackingError(f"component {idx} is not a tree")
        if paths_only and not _is_path(comp):
            raise PackingError(f"component {idx} is not a path")
        for x in component_vertices(comp):
            if x in seen:
                raise PackingError(
                    f"vertex {x} shared by components {seen[x]} and {idx}"
                )
            seen[x] = idx


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable statement that a packing meets a theorem's lower
    bound.  bound_display keeps the bound in the v/(s+1)-style unreduced
    form used by the command line output."""

    theorem: str
    s: int
    k: int
    v: int
    bound: Fraction
    achieved: int
    satisfied: bool
    bound_display: str

    def lines(self) -> list[str]:
        return [
            f"theorem={self.theorem}",
            f"s={self.s}",
            f"k={self.k}",
            f"v={self.v}",
            f"bound={self.bound_display}",
            f"achieved={self.achieved}",
            f"satisfied={'true' if self.satisfied else 'false'}",
        ]


def lambda_bound(v: int, s: int) -> tuple[Fraction, str]:
    return Fraction(v, s + 1), f"{v}/{s + 1}"


def ktree_bound(graph: Graph, k: int, s: int) -> tuple[Fraction, str]:
    """Sum of the per-component guarantees (v_c - k)/(sk - k + 1), clamped
    at zero; equals the plain formula for connected inputs."""
    q = s * k - k + 1
    total = Fraction(0)
    for comp in component_vertex_sets(graph):
        part = Fraction(len(comp) - k, q)
        if part > 0:
            total += part
    display = f"{total.numerator}/{total.denominator}"
    if len(component_vertex_sets(graph)) == 1:
        display = f"{graph.v() - k}/{q}"
    return total, display


def make_certificate(theorem: str, graph: Graph, s: int, k: int, achieved: int) -> Certificate:
    if theorem not in THEOREM_TAGS:
        raise ValueError(f"unknown theorem tag {theorem!r}")
    if theorem == "main1":
        bound, display = ktree_bound(graph, k, s)
    else:
        bound, display = lambda_bound(graph.v(), s)
    return Certificate(
        theorem=theorem,
        s=s,
        k=k,
        v=graph.v(),
        bound=bound,
        achieved=achieved,
        satisfied=achieved >= bound,
        bound_display=display,
    )


def verify_packing(graph: Graph, packing: Packing, theorem: str, s: int, k: int = 2) -> Certificate:
    """Full check of a packing against its graph and the claimed bound.

    Structural failures raise PackingError; a merely-too-small packing
    yields a certificate with satisfied=False.
    """
    paths_only = theorem in ("Main1", "DMain1")
    validate_packing(graph, packing, k, paths_only=paths_only)
    return make_certificate(theorem, graph, s, k, packing.size)


# -- packing file format ---------------------------------------------------


def emit_packing(packing: Packing) -> str:
    """One component per line: the edge list flattened to an even-length
    id sequence ("1 2 2 3" is the path 1-2-3)."""
    lines = []
    for comp in packing.components:
        lines.append(" ".join(f"{u} {w}" for u, w in comp))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_packing(text: str) -> Packing:
    comps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c "):
            continue
        fields = line.split()
        if len(fields) % 2 != 0:
            raise PackingError(f"line {lineno}: odd id count")
        try:
            ids = [int(f) for f in fields]
        except ValueError:
            raise PackingError(f"line {lineno}: non-integer id") from None
        edges = [(ids[i], ids[i + 1]) for i in range(0, len(ids), 2)]
        comps.append(edges)
    return Packing.of(comps)
