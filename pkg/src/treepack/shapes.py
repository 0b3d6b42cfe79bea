"""Structural Hamiltonian-path recognition for thin graph shapes.

Components whose branch structure is trivial (paths, cycles, tadpoles,
thetas, roses, and leaf-stem-leaf chains) admit a Hamiltonian path found
without search, which immediately yields floor(v/3) disjoint 2-edge paths.
Anything richer returns None and is left to the reductions or the exact
oracle.
"""

from __future__ import annotations

from .graph import Graph, Leaf, find_leaves, find_threads, threads_at

BRUTE_LEAF_LIMIT = 12


def _walk_path(graph: Graph) -> list[int] | None:
    """Hamiltonian path of a component that is itself a path or cycle."""
    verts = graph.vertices()
    if len(verts) == 1:
        return verts
    degs = {x: graph.degree(x) for x in verts}
    if any(d > 2 for d in degs.values()):
        return None
    ends = [x for x in verts if degs[x] == 1]
    if graph.e() == graph.v() - 1 and len(ends) == 2:
        start = min(ends)
    elif graph.e() == graph.v() and not ends:
        start = verts[0]
    else:
        return None
    seq = [start]
    prev = None
    cur = start
    while True:
        nxt = [y for y in graph.neighbors(cur) if y != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        if cur == start:
            break
        seq.append(cur)
    return seq if len(seq) == len(verts) else None


def _ham_ending_at(graph: Graph, vertices: frozenset[int], end: int) -> list[int] | None:
    """Hamiltonian path of the induced subgraph on `vertices` ending at
    `end`: cycles by rotation, small blocks by depth-first search."""
    if len(vertices) == 1:
        return [end]
    sub = graph.induced(vertices)
    if all(sub.degree(x) == 2 for x in vertices):
        seq = [end]
        prev = None
        cur = end
        while len(seq) < len(vertices):
            nxt = [y for y in sub.neighbors(cur) if y != prev]
            prev, cur = cur, nxt[0]
            seq.append(cur)
        seq.reverse()
        return seq
    if len(vertices) > BRUTE_LEAF_LIMIT:
        return None
    target = len(vertices)
    path = [end]
    used = {end}

    def dfs() -> bool:
        if len(path) == target:
            return True
        for y in sub.neighbors(path[-1]):
            if y not in used:
                used.add(y)
                path.append(y)
                if dfs():
                    return True
                path.pop()
                used.remove(y)
        return False

    if dfs():
        path.reverse()
        return path
    return None


def _chain(graph: Graph, leaves: list[Leaf]) -> list[int] | None:
    """Two leaves joined by a single thread covering the whole component."""
    if len(leaves) != 2:
        return None
    first, second = leaves
    if first.stem is None or second.stem is None:
        return None
    if set(first.stem.sequence) != set(second.stem.sequence):
        return None
    stem = first.stem  # anchored at first.boundary
    covered = set(first.vertices) | set(second.vertices) | set(stem.sequence)
    if covered != set(graph.vertices()):
        return None
    head = _ham_ending_at(graph, first.vertices, first.boundary)
    tail = _ham_ending_at(graph, second.vertices, second.boundary)
    if head is None or tail is None:
        return None
    tail.reverse()  # now starts at second.boundary
    return head + list(stem.interior) + tail


def hamiltonian_path(graph: Graph) -> list[int] | None:
    """Hamiltonian path of a connected thin component, or None.

    Recognized shapes: path, cycle, tadpole, rose (two cycles at one
    vertex), theta (two branch vertices, three threads), and chains of two
    leaves joined by one thread (covers cycle-path-cycle dumbbells and
    five-leaf chains).  Non-cycle leaf blocks over 12 vertices are not
    searched.
    """
    verts = graph.vertices()
    if not verts:
        return None
    if len(verts) == 1:
        return list(verts)
    direct = _walk_path(graph)
    if direct is not None:
        return direct

    branch = [x for x in verts if graph.degree(x) >= 3]
    if any(graph.degree(x) < 1 for x in verts):
        return None
    threads = find_threads(graph)

    if len(branch) == 1:
        b = branch[0]
        ts = threads_at(threads, b)
        cycles = [t for t in ts if t.kind == "cycle"]
        paths = [t for t in ts if t.kind == "path"]
        covered = {b}
        for t in ts:
            covered |= set(t.sequence)
        if covered != set(verts):
            return None
        if len(cycles) == 2 and not paths:
            left, right = cycles
            return list(reversed(left.interior)) + [b] + list(right.interior)
        if len(cycles) == 1 and len(paths) == 1:
            tail = paths[0].anchored_at(b)
            if graph.degree(tail.sequence[-1]) == 1:
                return list(reversed(tail.sequence)) + list(cycles[0].interior)
        return None

    if len(branch) == 2:
        x, y = branch
        ts = [t for t in threads if t.kind == "path" and set(t.ends) == {x, y}]
        if len(ts) == 3 and all(t.kind == "path" for t in threads):
            covered = set()
            for t in ts:
                covered |= set(t.sequence)
            if covered != set(verts):
                return None
            # the middle segment may be empty only for a 1-edge thread
            middle = next((t for t in ts if t.edge_count == 1), ts[1])
            rest = [t for t in ts if t is not middle]
            first = rest[0].anchored_at(x)
            last = rest[1].anchored_at(x)
            return (
                list(first.interior)
                + [y]
                + list(reversed(middle.anchored_at(x).interior))
                + [x]
                + list(last.interior)
            )

    leaves = find_leaves(graph)
    return _chain(graph, leaves)


def packable_by_traversal(graph: Graph) -> bool:
    return hamiltonian_path(graph) is not None
