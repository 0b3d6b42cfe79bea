"""Graph representation and structural feature detection.

Vertices are stable positive integers.  A Graph value is immutable once
built: every rewrite produces a new Graph, so values can be shared freely.
Iteration order is deterministic everywhere (vertices ascending, edges
lexicographic) to keep reduction traces and packings reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(GraphError):
    """Malformed graph file or illegal edge for the requested mode."""


class ClassViolationError(GraphError):
    """A graph was outside the degree class required by an operation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class Graph:
    """Undirected graph, simple by default.

    Multi mode permits parallel edges and loops and exists only so that
    subdivision generators can take multigraph inputs; the packers and
    reductions all require simple mode.
    """

    __slots__ = ("_adj", "_edges", "_loops", "mode", "_max_id")

    def __init__(self, vertices, edges=(), mode="simple"):
        if mode not in ("simple", "multi"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        adj: dict[int, list[int]] = {int(v): [] for v in vertices}
        loops: dict[int, int] = {}
        edge_list = []
        seen = set()
        for u, w in edges:
            u, w = int(u), int(w)
            if u not in adj or w not in adj:
                raise GraphFormatError(f"edge ({u},{w}) has a dead endpoint")
            if u > w:
                u, w = w, u
            if mode == "simple":
                if u == w:
                    raise GraphFormatError(f"loop at {u} not allowed in simple mode")
                if (u, w) in seen:
                    raise GraphFormatError(f"parallel edge ({u},{w}) not allowed in simple mode")
                seen.add((u, w))
            if u == w:
                loops[u] = loops.get(u, 0) + 1
                edge_list.append((u, w))
                continue
            adj[u].append(w)
            adj[w].append(u)
            edge_list.append((u, w))
        for v in adj:
            adj[v].sort()
        self._adj = adj
        self._loops = loops
        self._edges = tuple(sorted(edge_list))
        self._max_id = max(adj, default=0)

    # -- basic queries ---------------------------------------------------

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as ordered (u, w) pairs with u <= w, lexicographic.

        In multi mode parallel edges appear with multiplicity and loops as
        (u, u).
        """
        return self._edges

    def v(self) -> int:
        return len(self._adj)

    def e(self) -> int:
        return len(self._edges)

    def degree(self, x: int) -> int:
        return len(self._adj[x]) + 2 * self._loops.get(x, 0)

    def neighbors(self, x: int) -> list[int]:
        return self._adj[x]

    def has_vertex(self, x: int) -> bool:
        return x in self._adj

    def has_edge(self, u: int, w: int) -> bool:
        if u == w:
            return self._loops.get(u, 0) > 0
        return u in self._adj and w in self._adj[u]

    def max_id(self) -> int:
        return self._max_id

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.mode == other.mode
            and self._adj.keys() == other._adj.keys()
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self.mode, frozenset(self._adj), self._edges))

    def __repr__(self):
        return f"Graph(v={self.v()}, e={self.e()}, mode={self.mode})"

    # -- pure rewrites (simple mode only) --------------------------------

    def _require_simple(self):
        if self.mode != "simple":
            raise GraphError("operation requires a simple graph")

    def without_vertices(self, drop) -> "Graph":
        self._require_simple()
        drop = set(drop)
        verts = [v for v in self._adj if v not in drop]
        edges = [e for e in self._edges if e[0] not in drop and e[1] not in drop]
        return Graph(verts, edges)

    def without_edges(self, drop) -> "Graph":
        self._require_simple()
        drop = {(min(u, w), max(u, w)) for u, w in drop}
        edges = [e for e in self._edges if e not in drop]
        return Graph(self._adj, edges)

    def with_edges(self, add, new_vertices=()) -> "Graph":
        self._require_simple()
        verts = list(self._adj) + list(new_vertices)
        return Graph(verts, list(self._edges) + list(add))

    def induced(self, keep) -> "Graph":
        self._require_simple()
        keep = set(keep)
        edges = [e for e in self._edges if e[0] in keep and e[1] in keep]
        return Graph(keep, edges)


@dataclass(frozen=True)
class ClassSpec:
    """Degree class: every vertex degree in [r, s].

    With forbid_five_vertex_components the class additionally excludes
    graphs having a connected component on exactly five vertices (only
    meaningful for r=2, s=3, where such components obstruct the v/4 bound).
    """

    r: int
    s: int
    forbid_five_vertex_components: bool = False

    def __post_init__(self):
        if self.r < 0 or self.s < self.r:
            raise ValueError(f"need 0 <= r <= s, got r={self.r} s={self.s}")
        if self.forbid_five_vertex_components and (self.r, self.s) != (2, 3):
            raise ValueError("five-vertex components are only forbidden for r=2, s=3")


def lambda_class(s: int) -> ClassSpec:
    """The input class of the 2-edge-path packers: degrees in [2, s],
    and no 5-vertex components when s = 3."""
    if s < 3:
        raise ValueError("s must be at least 3")
    return ClassSpec(2, s, forbid_five_vertex_components=(s == 3))


@dataclass
class ClassReport:
    ok: bool
    bad_degree: list[tuple[int, int]] = field(default_factory=list)
    five_vertex_components: list[list[int]] = field(default_factory=list)

    def describe(self) -> str:
        parts = []
        for v, d in self.bad_degree:
            parts.append(f"vertex {v} has degree {d}")
        for comp in self.five_vertex_components:
            parts.append(f"5-vertex component {comp}")
        return "; ".join(parts) if parts else "ok"


def class_membership(graph: Graph, spec: ClassSpec) -> ClassReport:
    """Check degrees against [r, s] and, if forbidden, 5-vertex components.

    Total function: returns a report instead of raising.
    """
    report = ClassReport(ok=True)
    for x in graph.vertices():
        d = graph.degree(x)
        if not spec.r <= d <= spec.s:
            report.bad_degree.append((x, d))
    if spec.forbid_five_vertex_components:
        for comp in component_vertex_sets(graph):
            if len(comp) == 5:
                report.five_vertex_components.append(sorted(comp))
    report.ok = not report.bad_degree and not report.five_vertex_components
    return report


def require_class(graph: Graph, spec: ClassSpec, what: str = "input"):
    report = class_membership(graph, spec)
    if not report.ok:
        raise ClassViolationError(f"{what} not in class: {report.describe()}", report)


# -- components ----------------------------------------------------------


def component_vertex_sets(graph: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by minimum id."""
    seen: set[int] = set()
    comps = []
    for start in graph.vertices():
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in graph.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def components(graph: Graph) -> list[Graph]:
    """Split into connected component subgraphs, preserving vertex ids."""
    if graph.mode == "multi":
        out = []
        for comp in component_vertex_sets(graph):
            keep = set(comp)
            edges = [e for e in graph.edges() if e[0] in keep]
            out.append(Graph(comp, edges, mode="multi"))
        return out
    return [graph.induced(comp) for comp in component_vertex_sets(graph)]


# -- graph file format ---------------------------------------------------


def parse_graph(text: str, mode: str = "simple") -> Graph:
    """Parse the line-oriented graph format.

    Optional comment lines start with "c "; one header "p <v> <e>"; then e
    lines "e <u> <w>" with 1-based endpoints.  Simple mode rejects loops
    and duplicate unordered pairs.
    """
    n = None
    m = None
    edges = []
    comments = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c ") or line == "c":
            comments.append(line[2:])
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate header")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: header must be 'p <v> <e>'")
            try:
                n, m = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header field") from None
            if n < 0 or m < 0:
                raise GraphFormatError(f"line {lineno}: negative count in header")
        elif fields[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before header")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: edge line must be 'e <u> <w>'")
            try:
                u, w = int(fields[1]), int(fields[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer endpoint") from None
            if not (1 <= u <= n and 1 <= w <= n):
                raise GraphFormatError(f"line {lineno}: endpoint out of range 1..{n}")
            edges.append((u, w))
        else:
            raise GraphFormatError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise GraphFormatError("missing header line")
    if len(edges) != m:
        raise GraphFormatError(f"header promises {m} edges, file has {len(edges)}")
    graph = Graph(range(1, n + 1), edges, mode=mode)
    return graph


def parse_graph_comments(text: str) -> list[str]:
    """The comment payloads of a graph file, in order."""
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("c "):
            out.append(line[2:])
    return out


def emit_graph(graph: Graph, comments=()) -> str:
    """Serialize to the graph file format.

    Vertex ids are compacted to 1..v in ascending original order, so
    parse(emit(G)) equals G up to vertex identity.
    """
    ids = {v: i for i, v in enumerate(graph.vertices(), start=1)}
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {graph.v()} {graph.e()}")
    rows = sorted((min(ids[u], ids[w]), max(ids[u], ids[w])) for u, w in graph.edges())
    lines.extend(f"e {u} {w}" for u, w in rows)
    return "\n".join(lines) + "\n"


# -- threads --------------------------------------------------------------


@dataclass(frozen=True)
class Thread:
    """A maximal path whose interior vertices have degree 2 in the host
    graph, or a cycle with at most one vertex of degree != 2.

    For path kind the sequence runs endpoint to endpoint; for cycle kind
    it starts at the anchor (the one vertex of degree != 2, or the minimum
    id when the whole component is a cycle) and returns implicitly.
    """

    kind: str  # "path" | "cycle"
    sequence: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        if self.kind == "path":
            return len(self.sequence) - 1
        return len(self.sequence)

    @property
    def ends(self) -> tuple[int, int]:
        if self.kind == "path":
            return self.sequence[0], self.sequence[-1]
        return self.sequence[0], self.sequence[0]

    @property
    def interior(self) -> tuple[int, ...]:
        if self.kind == "path":
            return self.sequence[1:-1]
        return self.sequence[1:]

    def anchored_at(self, x: int) -> "Thread":
        """The same thread with the sequence starting at endpoint x."""
        if self.kind == "cycle":
            if self.sequence[0] != x:
                raise ValueError("cycle thread anchored elsewhere")
            return self
        if self.sequence[0] == x:
            return self
        if self.sequence[-1] == x:
            return Thread("path", tuple(reversed(self.sequence)))
        raise ValueError(f"{x} is not an endpoint of this thread")


def find_threads(graph: Graph) -> list[Thread]:
    """All threads of a simple graph whose components each have an edge.

    Every edge belongs to exactly one thread; every degree-2 vertex is
    interior to exactly one thread (except cycle anchors in all-degree-2
    components).  Single edges between two branch vertices are 1-edge
    path-threads.
    """
    graph._require_simple()
    deg = {x: graph.degree(x) for x in graph.vertices()}
    used: set[tuple[int, int]] = set()

    def take(u, w):
        used.add((min(u, w), max(u, w)))

    def taken(u, w):
        return (min(u, w), max(u, w)) in used

    threads = []
    anchors = [x for x in graph.vertices() if deg[x] != 2]
    for a in anchors:
        for b in graph.neighbors(a):
            if taken(a, b):
                continue
            seq = [a, b]
            take(a, b)
            prev, cur = a, b
            while deg[cur] == 2 and cur != a:
                nxt = next(y for y in graph.neighbors(cur) if y != prev)
                take(cur, nxt)
                seq.append(nxt)
                prev, cur = cur, nxt
            if cur == a:
                threads.append(Thread("cycle", tuple(seq[:-1])))
            else:
                threads.append(Thread("path", tuple(seq)))
    # components that are bare cycles: anchor at the minimum id
    for comp in component_vertex_sets(graph):
        if len(comp) == 0:
            continue
        a = comp[0]
        if deg[a] != 2 or any(deg[x] != 2 for x in comp):
            continue
        if any(taken(u, w) for u, w in graph.edges() if u in set(comp)):
            continue
        seq = [a]
        prev, cur = a, graph.neighbors(a)[0]
        take(a, cur)
        while cur != a:
            seq.append(cur)
            nxt = next(y for y in graph.neighbors(cur) if y != prev)
            take(cur, nxt)
            prev, cur = cur, nxt
        threads.append(Thread("cycle", tuple(seq)))
    threads.sort(key=lambda t: (t.sequence[0], t.sequence[-1], t.sequence))
    return threads


def threads_at(threads: list[Thread], x: int) -> list[Thread]:
    """Threads having x as an endpoint (cycle threads anchored at x count
    once but occupy two edges of x)."""
    out = []
    for t in threads:
        if t.kind == "cycle":
            if t.sequence[0] == x:
                out.append(t)
        elif t.sequence[0] == x or t.sequence[-1] == x:
            out.append(t)
    return out


# -- blocks ---------------------------------------------------------------


@dataclass
class BlockDecomposition:
    blocks: list[frozenset[int]]
    articulation_vertices: set[int]
    end_blocks: list[int]  # indices into blocks

    def block_edges(self, graph: Graph, idx: int) -> list[tuple[int, int]]:
        keep = self.blocks[idx]
        return [e for e in graph.edges() if e[0] in keep and e[1] in keep]


def find_blocks(graph: Graph) -> BlockDecomposition:
    """Standard block decomposition of a connected graph (iterative
    Hopcroft-Tarjan).  End-blocks are blocks containing exactly one
    articulation vertex; a block spanning the whole component is not an
    end-block."""
    verts = graph.vertices()
    if not verts:
        return BlockDecomposition([], set(), [])
    comp_sets = component_vertex_sets(graph)
    if len(comp_sets) != 1:
        raise GraphError("find_blocks requires a connected graph")

    index: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    counter = 0
    edge_stack: list[tuple[int, int]] = []
    blocks: list[frozenset[int]] = []
    articulation: set[int] = set()

    root = verts[0]
    if graph.v() == 1:
        return BlockDecomposition([frozenset(verts)], set(), [])

    # iterative DFS keeping a per-vertex neighbor cursor
    stack = [(root, iter(graph.neighbors(root)))]
    index[root] = low[root] = counter
    counter += 1
    parent[root] = None
    root_children = 0
    while stack:
        x, it = stack[-1]
        advanced = False
        for y in it:
            if y not in index:
                edge_stack.append((x, y))
                parent[y] = x
                index[y] = low[y] = counter
                counter += 1
                if x == root:
                    root_children += 1
                stack.append((y, iter(graph.neighbors(y))))
                advanced = True
                break
            elif y != parent[x] and index[y] < index[x]:
                edge_stack.append((x, y))
                low[x] = min(low[x], index[y])
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[x])
            if low[x] >= index[p]:
                members = set()
                while True:
                    u, w = edge_stack.pop()
                    members.add(u)
                    members.add(w)
                    if (u, w) == (p, x):
                        break
                blocks.append(frozenset(members))
                if p != root or root_children > 1:
                    articulation.add(p)
    if root_children > 1:
        articulation.add(root)

    end_blocks = []
    if len(blocks) > 1:
        for i, b in enumerate(blocks):
            if len(b & articulation) == 1:
                end_blocks.append(i)
    return BlockDecomposition(blocks, articulation, end_blocks)


# -- leaves ---------------------------------------------------------------


@dataclass
class Leaf:
    """A degree-one vertex or an end-block with at least two edges,
    together with its boundary vertex and (when present) the stem thread
    leading to the rest of the graph."""

    vertices: frozenset[int]
    boundary: int
    stem: Thread | None  # anchored at boundary when present
    is_cycle: bool

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def is_five_leaf(self) -> bool:
        return self.size == 5

    @property
    def is_triangle(self) -> bool:
        return self.is_cycle and self.size == 3


def find_leaves(graph: Graph, spec: ClassSpec | None = None) -> list[Leaf]:
    """Leaves of a connected graph with their stems.

    For graphs with all degrees >= 2 and s = 3 the stem exists and is
    unique for every leaf; a missing stem in that setting signals a caller
    bug and raises.  More generally the stem is attached whenever the
    boundary vertex has exactly one edge leaving the leaf.
    """
    decomposition = find_blocks(graph)
    leaves: list[Leaf] = []
    threads = find_threads(graph) if graph.e() > 0 else []

    def stem_for(boundary: int, inside: frozenset[int]) -> Thread | None:
        outside = [y for y in graph.neighbors(boundary) if y not in inside]
        if len(outside) != 1:
            return None
        for t in threads_at(threads, boundary):
            if t.kind == "cycle":
                continue
            seq = t.anchored_at(boundary).sequence
            if seq[1] == outside[0]:
                return t.anchored_at(boundary)
        return None

    for x in graph.vertices():
        if graph.degree(x) == 1:
            inside = frozenset([x])
            leaves.append(Leaf(inside, x, stem_for(x, inside), is_cycle=False))

    for i in decomposition.end_blocks:
        block = decomposition.blocks[i]
        edge_count = len(decomposition.block_edges(graph, i))
        if edge_count < 2:
            continue
        (boundary,) = block & decomposition.articulation_vertices
        is_cycle = all(
            len([y for y in graph.neighbors(v) if y in block]) == 2 for v in block
        )
        stem = stem_for(boundary, block)
        if stem is None and spec is not None and spec.r == 2 and spec.s == 3:
            raise GraphError(f"leaf at {boundary} has no stem; graph outside class?")
        leaves.append(Leaf(frozenset(block), boundary, stem, is_cycle=is_cycle))
    leaves.sort(key=lambda leaf: min(leaf.vertices))
    return leaves
