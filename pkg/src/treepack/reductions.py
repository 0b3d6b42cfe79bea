"""Minimalization and the six packing-preserving reductions.

Each reduction rewrites the graph into a strictly smaller one and records a
step carrying everything needed to lift a packing of the reduced graph back
to the original while preserving the bound implication.  Reductions are
total: structural ineligibility raises PreconditionViolated, and a rewrite
whose result leaves the degree class raises ReducedGraphOutOfClass so the
driver can fall back to another anchor or rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    ClassSpec,
    Graph,
    GraphError,
    Leaf,
    Thread,
    class_membership,
    component_vertex_sets,
    components,
    find_leaves,
    find_threads,
    lambda_class,
    require_class,
    threads_at,
)
from .oracle import oracle_lambda_k
from .packing import (
    Component,
    Packing,
    component_vertices,
    consecutive_triples,
    path3,
    validate_packing,
)
from .shapes import hamiltonian_path


class ReductionError(GraphError):
    pass


class PreconditionViolated(ReductionError):
    """The requested rewrite is structurally ineligible here."""


class ReducedGraphOutOfClass(ReductionError):
    """The rewrite applied but its result left the degree class."""


@dataclass
class ReductionStep:
    """One recorded, liftable rewrite.

    data holds the rule-specific anchors and detached side material; the
    pre and post graphs are snapshots so a trace can be replayed.
    pre_deleted_edges are the edges the driver's minimalization pass
    removed from the previous graph before this rewrite applied.
    """

    kind: str
    case: str
    pre_graph: Graph
    post_graph: Graph
    removed: tuple[int, ...]
    added_vertices: tuple[int, ...]
    added_edges: tuple[tuple[int, int], ...]
    gain: int
    data: dict = field(default_factory=dict)
    pre_deleted_edges: tuple[tuple[int, int], ...] = ()

    def describe(self) -> str:
        added = [str(v) for v in self.added_vertices]
        added += [f"{u}-{w}" for u, w in self.added_edges]
        return (
            f"{self.kind} {self.case or '-'} "
            f"removed=[{','.join(str(v) for v in self.removed)}] "
            f"added=[{','.join(added)}] gain={self.gain}"
        )


@dataclass
class ReductionTrace:
    initial: Graph
    steps: list[ReductionStep]
    final: Graph

    def dump(self) -> str:
        return "\n".join(s.describe() for s in self.steps) + ("\n" if self.steps else "")

    def replay(self) -> bool:
        """Re-apply every recorded rewrite from the initial graph and check
        it reproduces the final graph (up to the driver's last
        minimalization pass, which only deletes edges)."""
        cur = self.initial
        for step in self.steps:
            cur = cur.without_edges(step.pre_deleted_edges)
            if cur != step.pre_graph:
                return False
            cur = cur.without_vertices(step.removed).with_edges(
                step.added_edges, new_vertices=step.added_vertices
            )
            if cur != step.post_graph:
                return False
        return set(self.final.vertices()) == set(cur.vertices()) and set(
            self.final.edges()
        ) <= set(cur.edges())


def _apply(pre: Graph, removed, added_vertices, added_edges) -> Graph:
    return pre.without_vertices(removed).with_edges(added_edges, new_vertices=added_vertices)


def _check_post(post: Graph, spec: ClassSpec, what: str):
    report = class_membership(post, spec)
    if not report.ok:
        raise ReducedGraphOutOfClass(f"{what}: {report.describe()}")


# -- minimalization --------------------------------------------------------


def minimalize(graph: Graph, spec: ClassSpec) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Greedy edge deletion to a class-minimal spanning subgraph.

    Deterministic: repeated lexicographic passes until no single edge can
    be deleted without leaving the class.  For the 5-component-free class
    the result is checked to satisfy the minimality characterization
    (every edge touches a degree-2 vertex or a vertex of a 5-leaf).
    """
    require_class(graph, spec, "minimalize input")
    deg = {x: graph.degree(x) for x in graph.vertices()}
    alive: set[tuple[int, int]] = set(graph.edges())
    adj: dict[int, set[int]] = {x: set(graph.neighbors(x)) for x in graph.vertices()}
    deleted: list[tuple[int, int]] = []

    def creates_five_component(u: int, w: int) -> bool:
        # deleting a bridge may split off a 5-vertex component
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if (x, y) == (u, w) or (x, y) == (w, u):
                    continue
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if w in seen:
            return False  # not a bridge; component sizes unchanged
        comp_total = len(_component_of(adj, u, None))
        return len(seen) == 5 or comp_total - len(seen) == 5

    def _component_of(adjacency, start, _):
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    changed = True
    while changed:
        changed = False
        for u, w in sorted(alive):
            if (u, w) not in alive:
                continue
            if deg[u] <= spec.r or deg[w] <= spec.r:
                continue
            if spec.forbid_five_vertex_components and creates_five_component(u, w):
                continue
            alive.remove((u, w))
            adj[u].remove(w)
            adj[w].remove(u)
            deg[u] -= 1
            deg[w] -= 1
            deleted.append((u, w))
            changed = True

    minimal = Graph(graph.vertices(), sorted(alive))
    if spec.forbid_five_vertex_components:
        _assert_minimal_characterization(minimal)
    return minimal, tuple(deleted)


def _assert_minimal_characterization(graph: Graph):
    """Every edge of a minimal 5-component-free graph touches a degree-2
    vertex or a vertex of a 5-leaf."""
    five_leaf_vertices: set[int] = set()
    for comp in components(graph):
        if comp.e() == 0:
            continue
        for leaf in find_leaves(comp):
            if leaf.is_five_leaf:
                five_leaf_vertices |= leaf.vertices
    for u, w in graph.edges():
        if graph.degree(u) == 2 or graph.degree(w) == 2:
            continue
        if u in five_leaf_vertices or w in five_leaf_vertices:
            continue
        raise GraphError(
            f"minimalize postcondition failed: edge ({u},{w}) touches neither "
            f"a degree-2 vertex nor a 5-leaf"
        )


# -- R1: thread interior removal -------------------------------------------


def reduce_thread_removal(graph: Graph, thread: Thread, s: int) -> tuple[Graph, ReductionStep]:
    """Delete the interior of a long thread.

    Eligible when s >= 4 and the thread has at least 4 edges, or s = 3 and
    the interior size is 3k or 3k+1 (k >= 1).  The interior packs
    floor/3 disjoint 2-edge paths on its own.
    """
    interior = thread.interior
    n = len(interior)
    if s >= 4:
        if thread.edge_count < 4:
            raise PreconditionViolated(f"thread has {thread.edge_count} < 4 edges")
    else:
        if n < 3 or n % 3 not in (0, 1):
            raise PreconditionViolated(f"interior size {n} not of the form 3k or 3k+1")
    post = graph.without_vertices(interior)
    _check_post(post, lambda_class(s), "thread removal")
    step = ReductionStep(
        kind="R1-thread-removal",
        case="a1" if s >= 4 else "a2",
        pre_graph=graph,
        post_graph=post,
        removed=tuple(sorted(interior)),
        added_vertices=(),
        added_edges=(),
        gain=n // 3,
        data={"interior": interior},
    )
    return post, step


def _lift_r1(step: ReductionStep, packed: list[Component]) -> list[Component]:
    return packed + consecutive_triples(step.data["interior"])


# -- R2: thread contraction to a fresh degree-2 vertex ----------------------


def reduce_thread_contract(graph: Graph, thread: Thread) -> tuple[Graph, ReductionStep]:
    """Replace the interior of a 3k+2-vertex thread by one new vertex z
    adjacent to both anchors (s = 3 rule)."""
    if thread.kind != "path":
        raise PreconditionViolated("cycle threads cannot be contracted")
    interior = thread.interior
    n = len(interior)
    if n < 5 or n % 3 != 2:
        raise PreconditionViolated(f"interior size {n} not of the form 3k+2, k >= 1")
    x, y = thread.ends
    z = graph.max_id() + 1
    post = graph.without_vertices(interior).with_edges([(x, z), (y, z)], new_vertices=[z])
    _check_post(post, lambda_class(3), "thread contraction")
    step = ReductionStep(
        kind="R2-thread-contract",
        case="",
        pre_graph=graph,
        post_graph=post,
        removed=tuple(sorted(interior)),
        added_vertices=(z,),
        added_edges=((min(x, z), max(x, z)), (min(y, z), max(y, z))),
        gain=n // 3,
        data={"x": x, "y": y, "z": z, "interior": interior},
    )
    return post, step


def _lift_r2(step: ReductionStep, packed: list[Component]) -> list[Component]:
    x, y, z = step.data["x"], step.data["y"], step.data["z"]
    interior = step.data["interior"]
    zcomp = None
    for comp in packed:
        if z in component_vertices(comp):
            zcomp = comp
            break
    if zcomp is None:
        return packed + consecutive_triples(interior)
    rest = [c for c in packed if c is not zcomp]
    verts = component_vertices(zcomp)
    uses_xz = (min(x, z), max(x, z)) in zcomp
    uses_yz = (min(y, z), max(y, z)) in zcomp
    if uses_xz and uses_yz:
        # x-z-y becomes x plus the first two interior vertices
        return rest + [path3(x, interior[0], interior[1])] + consecutive_triples(interior[2:])
    if uses_xz:
        (r,) = verts - {x, z}
        return rest + [path3(r, x, interior[0])] + consecutive_triples(interior[1:])
    (r,) = verts - {y, z}
    return rest + [path3(r, y, interior[-1])] + consecutive_triples(interior[:-1])


# -- R3: leaf detach ---------------------------------------------------------


def _certified_side_packing(side: Graph, s: int, exact_threshold: int) -> list[Component] | None:
    """A maximum packing of the detached side, accepted only when its size
    is exactly floor(v/3): via a structural Hamiltonian path, or the exact
    oracle on small sides."""
    want = side.v() // 3
    ham = hamiltonian_path(side)
    if ham is not None:
        return consecutive_triples(ham)
    if side.v() <= exact_threshold:
        value, witness = oracle_lambda_k(side, 2, max_candidates=None)
        if value == want:
            return list(witness.components)
    return None


def reduce_leaf_detach(
    graph: Graph,
    bridge: tuple[int, int],
    side_vertices,
    s: int,
    exact_threshold: int = 12,
) -> tuple[Graph, ReductionStep]:
    """Cut a bridge and drop the side A whose maximum packing attains
    floor(v(A)/3); for s = 3 the side must not have exactly 5 vertices."""
    u, w = bridge
    if not graph.has_edge(u, w):
        raise PreconditionViolated(f"bridge ({u},{w}) not in graph")
    side = frozenset(side_vertices)
    if not ((u in side) ^ (w in side)):
        raise PreconditionViolated("bridge must have exactly one endpoint in the side")
    cut = graph.without_edges([bridge])
    comp_sets = {frozenset(c) for c in component_vertex_sets(cut)}
    if side not in comp_sets:
        raise PreconditionViolated("side is not a full component of G minus the bridge")
    if len(side) < 3:
        raise PreconditionViolated("side must have at least 3 vertices")
    if s == 3 and len(side) == 5:
        raise PreconditionViolated("a 5-vertex side cannot be detached when s = 3")
    side_graph = graph.induced(side)
    local = _certified_side_packing(side_graph, s, exact_threshold)
    if local is None:
        raise PreconditionViolated("cannot certify the side packs floor(v/3) paths")
    post = graph.without_vertices(side)
    _check_post(post, lambda_class(s), "leaf detach")
    step = ReductionStep(
        kind="R3-leaf-detach",
        case="",
        pre_graph=graph,
        post_graph=post,
        removed=tuple(sorted(side)),
        added_vertices=(),
        added_edges=(),
        gain=len(side) // 3,
        data={"local": local, "bridge": bridge},
    )
    return post, step


def _lift_r3(step: ReductionStep, packed: list[Component]) -> list[Component]:
    return packed + list(step.data["local"])


# -- R4: five-leaf with a one-edge stem -------------------------------------


def _oracle_paths(graph: Graph, verts, need: int) -> list[Component]:
    value, witness = oracle_lambda_k(graph.induced(verts), 2, max_candidates=None)
    if value < need:
        raise ReductionError(f"local side packs {value} < {need} paths")
    return list(witness.components[:need])


def reduce_five_leaf(graph: Graph, leaf: Leaf) -> tuple[Graph, ReductionStep]:
    """Remove a 5-leaf hanging by a 1-edge stem, rerouting the two other
    threads at the stem's far end per their lengths (s = 3 rule)."""
    if not leaf.is_five_leaf:
        raise PreconditionViolated("leaf does not have 5 vertices")
    if leaf.stem is None or leaf.stem.edge_count != 1:
        raise PreconditionViolated("five-leaf reduction needs a 1-edge stem")
    a = leaf.boundary
    b = leaf.stem.sequence[-1]
    if graph.degree(a) != 3 or graph.degree(b) != 3:
        raise PreconditionViolated("stem endpoints must have degree 3")
    threads = find_threads(graph)
    others = [
        t for t in threads_at(threads, b)
        if t.kind == "path" and set(t.ends) != {a, b}
    ]
    if len(others) != 2 or any(t.edge_count not in (2, 3) for t in others):
        raise PreconditionViolated("far stem end needs two 2- or 3-edge threads")
    others = [t.anchored_at(b) for t in others]
    # T1 is the longer thread; ties broken by (far end, inner neighbor)
    others.sort(key=lambda t: (-t.edge_count, t.sequence[-1], t.sequence[1]))
    t1, t2 = others
    x1, x2 = t1.sequence[-1], t2.sequence[-1]
    z1, z2 = t1.sequence[1], t2.sequence[1]
    y1 = t1.sequence[2] if t1.edge_count == 3 else None
    y2 = t2.sequence[2] if t2.edge_count == 3 else None
    leaf_verts = set(leaf.vertices)

    if t1.edge_count == 2 and t2.edge_count == 2:
        if x1 != x2:
            case = "a1.1"
            removed = leaf_verts | {b, z1, z2}
            added = []
        else:
            case = "a1.2"
            removed = leaf_verts | {b}
            added = [(z1, z2)]
    elif t1.edge_count == 3 and t2.edge_count == 2:
        if x1 != x2:
            case = "a2.1"
            removed = leaf_verts | {b, z1, z2}
            added = [(y1, x2)]
        else:
            case = "a2.2"
            removed = leaf_verts | {b, z1}
            added = [(y1, z2)]
    else:
        case = "a3"
        removed = leaf_verts | {b, z1, z2}
        added = [(y1, y2)]
    for u, w in added:
        if graph.has_edge(u, w):
            raise PreconditionViolated(f"replacement edge ({u},{w}) already present")
    post = _apply(graph, removed, (), added)
    _check_post(post, lambda_class(3), f"five-leaf case {case}")
    step = ReductionStep(
        kind="R4-five-leaf",
        case=case,
        pre_graph=graph,
        post_graph=post,
        removed=tuple(sorted(removed)),
        added_vertices=(),
        added_edges=tuple((min(u, w), max(u, w)) for u, w in added),
        gain=2,
        data={
            "a": a, "b": b, "x1": x1, "x2": x2,
            "y1": y1, "y2": y2, "z1": z1, "z2": z2,
            "leaf": tuple(sorted(leaf_verts)),
            "u": added[0] if added else None,
        },
    )
    return post, step


def _swap_triangle_path(packed: list[Component], u_edge, replacement: Component) -> list[Component]:
    """If some component uses u_edge, it spans exactly the triangle around
    it; swap in the same-vertex path avoiding u_edge."""
    ue = (min(u_edge), max(u_edge))
    out = []
    for comp in packed:
        if ue in comp:
            assert component_vertices(comp) == component_vertices(replacement)
            out.append(replacement)
        else:
            out.append(comp)
    return out


def _lift_r4(step: ReductionStep, packed: list[Component]) -> list[Component]:
    d = step.data
    pre = step.pre_graph
    case = step.case
    leaf = set(d["leaf"])
    b, x1, x2, y1, y2, z1, z2 = d["b"], d["x1"], d["x2"], d["y1"], d["y2"], d["z1"], d["z2"]

    if case == "a1.2":
        packed = _swap_triangle_path(packed, (z1, z2), path3(z1, x1, z2))
    elif case == "a2.2":
        packed = _swap_triangle_path(packed, (y1, z2), path3(y1, x1, z2))

    u = d["u"]
    ucomp = None
    if u is not None and case in ("a2.1", "a3"):
        ue = (min(u), max(u))
        for comp in packed:
            if ue in comp:
                ucomp = comp
                break
    if ucomp is None:
        return packed + _oracle_paths(pre, step.removed, 2)

    rest = [c for c in packed if c is not ucomp]
    verts = component_vertices(ucomp)
    if case == "a2.1":
        if (min(x1, y1), max(x1, y1)) in ucomp:
            # x1-y1-x2 in the packing: reroute onto the thread's own interior
            local = _oracle_paths(pre, leaf | {b, z2}, 2)
            return rest + [path3(x1, y1, z1)] + local
        (c2,) = verts - {y1, x2}
        local = _oracle_paths(pre, leaf | {b, z1, y1}, 2)
        return rest + [path3(z2, x2, c2)] + local
    # case a3: the path is x1-y1-y2 or y1-y2-x2
    if x1 in verts:
        local = _oracle_paths(pre, leaf | {b, z2, y2}, 2)
        return rest + [path3(x1, y1, z1)] + local
    local = _oracle_paths(pre, leaf | {b, z1, y1}, 2)
    return rest + [path3(x2, y2, z2)] + local


# -- R5: star reduction ------------------------------------------------------


def _star_partition(graph: Graph, a: int, threads: list[Thread]):
    """Split the threads at a into triangles, 2-edge paths and 3-edge
    paths; anything else disqualifies the star."""
    at_a = threads_at(threads, a)
    tri, two, three = [], [], []
    for t in at_a:
        if t.kind == "cycle":
            if t.edge_count != 3:
                raise PreconditionViolated(f"cycle thread of {t.edge_count} edges at {a}")
            tri.append(t)
        elif t.edge_count == 2:
            two.append(t.anchored_at(a))
        elif t.edge_count == 3:
            three.append(t.anchored_at(a))
        else:
            raise PreconditionViolated(f"thread of {t.edge_count} edges at {a}")
    if not two and not three:
        raise PreconditionViolated("every thread at the star center is a triangle")
    return tri, two, three


def reduce_star(graph: Graph, a: int, s: int) -> tuple[Graph, ReductionStep]:
    """Reduce the star of threads around a vertex a (3 <= d(a) <= s, all
    threads of at most 3 edges).

    3-edge threads keep their far interior vertex and are rewired in
    pairs; an odd 3-edge thread is matched with a kept 2-edge interior.
    End-vertices left with a single edge are removed together with a
    prefix of their one remaining thread.
    """
    d = graph.degree(a)
    if not 3 <= d <= s:
        raise PreconditionViolated(f"degree {d} at {a} outside [3, {s}]")
    threads = find_threads(graph)
    tri, two, three = _star_partition(graph, a, threads)
    # entries: (z, x) for 2-edge threads a-z-x; (z, y, x) for a-z-y-x
    two_entries = sorted((t.sequence[1], t.sequence[2]) for t in two)
    three_entries = sorted((t.sequence[1], t.sequence[2], t.sequence[3]) for t in three)
    x2_set = {x for _, x in two_entries}
    x3_set = {x for _, _, x in three_entries}
    t_count: dict[int, int] = {}
    for _, x in two_entries:
        t_count[x] = t_count.get(x, 0) + 1

    x2_prime = []
    for x in sorted(x2_set - x3_set):
        if t_count[x] >= 2 and graph.degree(x) == t_count[x] + 1:
            lx = next(
                (
                    t for t in threads_at(threads, x)
                    if t.kind == "path"
                    and (t.sequence[1] if t.sequence[0] == x else t.sequence[-2]) not in
                    {z for z, _ in two_entries}
                    and set(t.ends) != {a, x}
                ),
                None,
            )
            if lx is None:
                raise PreconditionViolated(f"no outside thread at {x}")
            lx = lx.anchored_at(x)
            if lx.edge_count > 3:
                raise PreconditionViolated(f"outside thread at {x} has {lx.edge_count} > 3 edges")
            closure = lx.sequence[: lx.edge_count]  # x plus l-1 interior vertices
            x2_prime.append({"x": x, "l": lx.edge_count, "closure": closure})
    closure_overlap = set()
    for entry in x2_prime:
        if set(entry["closure"]) & closure_overlap:
            raise PreconditionViolated("outside threads of star end-vertices overlap")
        closure_overlap |= set(entry["closure"])
    for entry in x2_prime:
        far = entry["closure"][0]
        # guard: another closure must not swallow this thread's far anchor
        if any(e is not entry and far in e["closure"] for e in x2_prime):
            raise PreconditionViolated("outside threads of star end-vertices overlap")

    r_entry = None
    j_entry = None
    if len(three_entries) % 2 == 0:
        case = "a1"
        paired = three_entries
    else:
        if not two_entries:
            raise PreconditionViolated("odd 3-edge threads but no 2-edge thread to borrow")
        r_entry = three_entries[0]
        j_entry = two_entries[0]
        paired = three_entries[1:]
        case = "a2.1" if r_entry[2] != j_entry[1] else "a2.2"
    pairs = [(paired[i], paired[i + 1]) for i in range(0, len(paired), 2)]

    kept_j = j_entry[0] if j_entry else None
    effective_x2 = [e for e in x2_prime if j_entry is None or e["x"] != j_entry[1]]

    removed: set[int] = {a}
    for t in tri:
        removed |= set(t.interior)
    for z, x in two_entries:
        if kept_j is None or z != kept_j:
            removed.add(z)
    for z, y, x in three_entries:
        removed.add(z)
    if case == "a2.1":
        removed.add(r_entry[1])  # y_r goes too
    for entry in effective_x2:
        removed |= set(entry["closure"])

    added = [(min(p[1], q[1]), max(p[1], q[1])) for p, q in pairs]
    if case == "a2.1":
        added.append((min(r_entry[2], j_entry[0]), max(r_entry[2], j_entry[0])))
    elif case == "a2.2":
        added.append((min(r_entry[1], j_entry[0]), max(r_entry[1], j_entry[0])))
    for u, w in added:
        if graph.has_edge(u, w):
            raise PreconditionViolated(f"replacement edge ({u},{w}) already present")
    if len(set(added)) != len(added):
        raise PreconditionViolated("replacement edges collide")

    d_prime = len(effective_x2)
    _check_star_liftable(case, tri, two_entries, three_entries, pairs,
                         effective_x2, kept_j, r_entry)

    post = _apply(graph, removed, (), added)
    _check_post(post, lambda_class(s) if s >= 3 else ClassSpec(2, s), f"star case {case}")
    step = ReductionStep(
        kind="R5-star",
        case=case,
        pre_graph=graph,
        post_graph=post,
        removed=tuple(sorted(removed)),
        added_vertices=(),
        added_edges=tuple(sorted(added)),
        gain=1 + d_prime,
        data={
            "a": a,
            "triangles": [tuple(t.interior) for t in tri],
            "two": two_entries,
            "three": three_entries,
            "pairs": pairs,
            "r": r_entry,
            "j": j_entry,
            "x2prime": effective_x2,
        },
    )
    return post, step


def _check_star_liftable(case, tri, two_entries, three_entries, pairs,
                         effective_x2, kept_j, r_entry):
    """Guarantee the lift can always add 1 + d' paths, whatever the reduced
    packing looks like: the d' end-vertex paths reserve interior vertices
    of their own threads, and the final path near the center needs either
    a triangle, a rewired pair, the odd-thread leftovers, or two never-
    consumed 2-edge interiors."""
    reserved = 0
    for entry in effective_x2:
        reserved += max(0, 3 - entry["l"])
    safe_pool = 0
    for z, x in two_entries:
        if z == kept_j:
            continue
        holder = next((e for e in effective_x2 if e["x"] == x), None)
        if holder is None:
            safe_pool += 1
    for entry in effective_x2:
        t_here = sum(1 for z, x in two_entries if x == entry["x"] and z != kept_j)
        safe_pool += max(0, t_here - max(0, 3 - entry["l"]))
    if case == "a2.2":
        safe_pool += 1  # z_r is removed and never consumed
    if tri or pairs:
        return
    if case == "a2.1":
        return  # the rewired odd thread supplies the path in every scenario
    if safe_pool >= 2:
        return
    raise PreconditionViolated("cannot guarantee the center path after the star rewrite")


def _lift_r5(step: ReductionStep, packed: list[Component]) -> list[Component]:
    d = step.data
    pre = step.pre_graph
    a = d["a"]
    case = step.case
    r_entry, j_entry = d["r"], d["j"]

    if case == "a2.2":
        zr, yr, xr = r_entry
        packed = _swap_triangle_path(packed, (yr, j_entry[0]), path3(yr, xr, j_entry[0]))

    packed = list(packed)
    consumed: set[int] = set()
    freed: set[int] = set()

    def find_comp_with(edge):
        e = (min(edge), max(edge))
        for comp in packed:
            if e in comp:
                return comp
        return None

    for p, q in d["pairs"]:
        comp = find_comp_with((p[1], q[1]))
        if comp is None:
            continue
        verts = component_vertices(comp)
        # the path is x_k - y_k - y_k'; the center keeps its own interior z_k
        if p[2] in verts:
            k, other = p, q
        else:
            k, other = q, p
        packed.remove(comp)
        packed.append(path3(k[2], k[1], k[0]))
        consumed.add(k[0])
        freed.add(other[1])

    if case == "a2.1":
        zr, yr, xr = r_entry
        zj, xj = j_entry
        comp = find_comp_with((xr, zj))
        if comp is not None:
            verts = component_vertices(comp)
            packed.remove(comp)
            if verts == {xr, zj, xj}:
                packed.append(path3(xr, yr, zr))
                consumed |= {yr, zr}
                freed |= {zj, xj}
            else:
                (c,) = verts - {xr, zj}
                packed.append(path3(c, xr, yr))
                consumed.add(yr)
                freed.add(zj)

    free = (set(step.removed) - consumed) | freed
    new_paths: list[Component] = []

    def book(component: Component):
        new_paths.append(component)
        free.difference_update(component_vertices(component))

    for entry in d["x2prime"]:
        closure = entry["closure"]
        x = entry["x"]
        if entry["l"] >= 3:
            book(path3(closure[0], closure[1], closure[2]))
        else:
            own = sorted(
                z for z, xx in d["two"] if xx == x and z in free
            )
            if entry["l"] == 2:
                book(path3(own[0], x, closure[1]))
            else:
                book(path3(own[0], x, own[1]))

    center = _find_free_path(pre, free)
    if center is None:
        raise ReductionError("star lift could not place the center path")
    book(center)
    assert len(new_paths) == step.gain
    return packed + new_paths


def _find_free_path(graph: Graph, free: set[int]) -> Component | None:
    for b in sorted(free):
        nbrs = [y for y in graph.neighbors(b) if y in free]
        if len(nbrs) >= 2:
            return path3(nbrs[0], b, nbrs[1])
    return None


# -- R6: two five-leaves on one-edge stems at a common vertex ---------------


def reduce_double_five_leaf(graph: Graph, a: int) -> tuple[Graph, ReductionStep]:
    """Remove two 5-leaves hanging by 1-edge stems at a degree-3 vertex,
    joining their boundary vertices by a new edge (s = 3 rule)."""
    if graph.degree(a) != 3:
        raise PreconditionViolated(f"degree {graph.degree(a)} at {a}, need 3")
    comp_verts = next(c for c in component_vertex_sets(graph) if a in c)
    comp = graph.induced(comp_verts)
    stemmed = []
    for leaf in find_leaves(comp):
        if (
            leaf.is_five_leaf
            and leaf.stem is not None
            and leaf.stem.edge_count == 1
            and leaf.stem.sequence[-1] == a
        ):
            stemmed.append(leaf)
    if len(stemmed) < 2:
        raise PreconditionViolated("need two 5-leaves on 1-edge stems at the vertex")
    stemmed.sort(key=lambda leaf: leaf.boundary)
    first, second = stemmed[0], stemmed[1]
    x1, x2 = first.boundary, second.boundary
    side1 = tuple(sorted(first.vertices - {x1}))
    side2 = tuple(sorted(second.vertices - {x2}))
    removed = set(side1) | set(side2)
    if graph.has_edge(x1, x2):
        raise PreconditionViolated("boundary vertices already adjacent")
    post = _apply(graph, removed, (), [(x1, x2)])
    _check_post(post, lambda_class(3), "double five-leaf")
    step = ReductionStep(
        kind="R6-double-five-leaf",
        case="",
        pre_graph=graph,
        post_graph=post,
        removed=tuple(sorted(removed)),
        added_vertices=(),
        added_edges=((min(x1, x2), max(x1, x2)),),
        gain=2,
        data={"a": a, "x1": x1, "x2": x2, "side1": side1, "side2": side2},
    )
    return post, step


def _lift_r6(step: ReductionStep, packed: list[Component]) -> list[Component]:
    d = step.data
    pre = step.pre_graph
    packed = _swap_triangle_path(packed, (d["x1"], d["x2"]), path3(d["x1"], d["a"], d["x2"]))
    out = list(packed)
    out += _oracle_paths(pre, d["side1"], 1)
    out += _oracle_paths(pre, d["side2"], 1)
    return out


# -- lifting dispatcher ------------------------------------------------------

_LIFTERS = {
    "R1-thread-removal": _lift_r1,
    "R2-thread-contract": _lift_r2,
    "R3-leaf-detach": _lift_r3,
    "R4-five-leaf": _lift_r4,
    "R5-star": _lift_r5,
    "R6-double-five-leaf": _lift_r6,
}


def lift_packing(step: ReductionStep, packing: Packing) -> Packing:
    """Convert a packing of the step's post-graph into one of its
    pre-graph, gaining at least the step's guaranteed number of paths."""
    validate_packing(step.post_graph, packing, 2, paths_only=True)
    lifted = _LIFTERS[step.kind](step, list(packing.components))
    result = Packing.of(lifted)
    validate_packing(step.pre_graph, result, 2, paths_only=True)
    if result.size < packing.size + step.gain:
        raise ReductionError(
            f"lift of {step.kind} gained {result.size - packing.size} < {step.gain}"
        )
    return result


# -- reduction selection -----------------------------------------------------

PRIORITY = ("R1", "R2", "R3", "R6", "R4", "R5")


def find_reduction(graph: Graph, s: int, exact_threshold: int = 12) -> tuple[Graph, ReductionStep] | None:
    """First applicable reduction under the fixed priority
    R1 > R2 > R3 > R6 > R4 > R5, scanning anchors in ascending order.
    Applications whose result leaves the class are skipped."""
    threads = find_threads(graph) if graph.e() else []
    for kind in PRIORITY:
        if kind in ("R2", "R4", "R6") and s != 3:
            continue
        attempts = _candidates(graph, s, kind, threads, exact_threshold)
        for attempt in attempts:
            try:
                return attempt()
            except ReductionError:
                continue
    return None


def _candidates(graph: Graph, s: int, kind: str, threads, exact_threshold):
    if kind == "R1":
        for t in threads:
            yield lambda t=t: reduce_thread_removal(graph, t, s)
    elif kind == "R2":
        for t in threads:
            if t.kind == "path":
                yield lambda t=t: reduce_thread_contract(graph, t)
    elif kind == "R3":
        for comp in components(graph):
            if comp.e() == 0:
                continue
            for leaf in find_leaves(comp):
                if leaf.stem is None or leaf.size < 2:
                    continue
                side = set(leaf.vertices) | set(leaf.stem.interior)
                far = leaf.stem.sequence[-1]
                inner = leaf.stem.sequence[-2]
                yield lambda side=side, far=far, inner=inner: reduce_leaf_detach(
                    graph, (min(inner, far), max(inner, far)), side, s,
                    exact_threshold=exact_threshold,
                )
    elif kind == "R6":
        seen = set()
        for comp in components(graph):
            if comp.e() == 0:
                continue
            for leaf in find_leaves(comp):
                if leaf.is_five_leaf and leaf.stem is not None and leaf.stem.edge_count == 1:
                    far = leaf.stem.sequence[-1]
                    if far not in seen:
                        seen.add(far)
                        yield lambda far=far: reduce_double_five_leaf(graph, far)
    elif kind == "R4":
        for comp in components(graph):
            if comp.e() == 0:
                continue
            for leaf in find_leaves(comp):
                if leaf.is_five_leaf and leaf.stem is not None and leaf.stem.edge_count == 1:
                    yield lambda leaf=leaf: reduce_five_leaf(graph, leaf)
    elif kind == "R5":
        for a in graph.vertices():
            if 3 <= graph.degree(a) <= s:
                yield lambda a=a: reduce_star(graph, a, s)
