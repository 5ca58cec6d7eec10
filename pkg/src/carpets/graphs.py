"""Small directed-graph helpers shared by topology and dimension code.

Graphs are given as adjacency lists over integer vertices 0..n-1; edge
multiplicities are kept by repeating targets.  Everything here is
deterministic: components and orders depend only on the input order.
"""

from __future__ import annotations


def strongly_connected_components(adjacency: list[list[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative to survive deep graphs.

    Returns components as sorted vertex lists, in a deterministic order
    (reverse topological: every edge leaves a component listed later).
    """
    n = len(adjacency)
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index_of[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            vertex, edge_pos = work.pop()
            if edge_pos == 0:
                index_of[vertex] = low[vertex] = counter
                counter += 1
                stack.append(vertex)
                on_stack[vertex] = True
            advanced = False
            targets = adjacency[vertex]
            while edge_pos < len(targets):
                target = targets[edge_pos]
                edge_pos += 1
                if index_of[target] == -1:
                    work.append((vertex, edge_pos))
                    work.append((target, 0))
                    advanced = True
                    break
                if on_stack[target]:
                    low[vertex] = min(low[vertex], index_of[target])
            if advanced:
                continue
            if low[vertex] == index_of[vertex]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack[member] = False
                    component.append(member)
                    if member == vertex:
                        break
                components.append(sorted(component))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[vertex])
    return components


def reachable_from(adjacency: list[list[int]], start: int) -> list[int]:
    """Vertices reachable from start (inclusive), in discovery order."""
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        vertex = frontier.pop()
        for target in adjacency[vertex]:
            if target not in seen:
                seen.add(target)
                order.append(target)
                frontier.append(target)
    return order


def union_find_connected(count: int, pairs: list[tuple[int, int]]) -> bool:
    """True iff the undirected graph on 0..count-1 with these edges is connected."""
    if count <= 1:
        return True
    parent = list(range(count))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    merged = count
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            merged -= 1
    return merged == 1


def has_undirected_cycle(count: int, pairs: list[tuple[int, int]]) -> bool:
    """Cycle test for a simple undirected graph given as unique vertex pairs."""
    parent = list(range(count))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            return True
        parent[ra] = rb
    return False
