"""Topology reports read off the neighbor graph.

Connectedness of the attractor reduces to connectedness of the piece
graph spanned by the initial labels.  The fine structure of a pairwise
intersection A meet h(A) is read from the cycle structure of the part
of the neighbor graph reachable from h: boundary points correspond to
infinite label paths, so one forced path means one point, independent
cycles mean finitely many, a cycle feeding another cycle means
countably many branch moments, and two cycles tangled in one strongly
connected component mean a Cantor set of choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graphs import (
    has_undirected_cycle,
    strongly_connected_components,
    union_find_connected,
)
from .neighbors import Label, NeighborGraph

SINGLETON = "Singleton"
FINITE = "Finite"
COUNTABLY_INFINITE = "CountablyInfinite"
UNCOUNTABLE = "Uncountable"

TOTALLY_DISCONNECTED = "TotallyDisconnectedOrEmpty"
DENDRITE = "Dendrite"
PCF = "PCF"
COUNTABLE_WEB = "CountableWeb"
UNCOUNTABLE_CARPET = "UncountableCarpet"

ATTRACTOR_CLASSES = (
    TOTALLY_DISCONNECTED,
    DENDRITE,
    PCF,
    COUNTABLE_WEB,
    UNCOUNTABLE_CARPET,
)


@dataclass(frozen=True, slots=True)
class ConnectednessGraph:
    """Undirected graph on map indices 1..m; edge iff pieces touch."""

    m: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def connected(self) -> bool:
        zero_based = [(a - 1, b - 1) for a, b in self.pairs]
        return union_find_connected(self.m, zero_based)

    @property
    def has_cycle(self) -> bool:
        zero_based = [(a - 1, b - 1) for a, b in self.pairs]
        return has_undirected_cycle(self.m, zero_based)


def connectedness_graph(m: int, labels: list[Label]) -> ConnectednessGraph:
    """Deduplicate initial labels into undirected piece adjacencies."""
    pairs = sorted({(min(k, j), max(k, j)) for k, j in labels})
    return ConnectednessGraph(m=m, pairs=tuple(pairs))


@dataclass(frozen=True, slots=True)
class _CycleStructure:
    component_of: tuple[int, ...]
    # per component, in reverse topological order as produced by Tarjan
    reaches_tangle: tuple[bool, ...]
    chained_cycles: tuple[bool, ...]
    deterministic: tuple[bool, ...]


@lru_cache(maxsize=128)
def _cycle_structure(graph: NeighborGraph) -> _CycleStructure:
    adjacency = graph.out_adjacency()
    n = len(adjacency)
    components = strongly_connected_components(adjacency)
    component_of = [0] * n
    for comp_id, members in enumerate(components):
        for vertex in members:
            component_of[vertex] = comp_id
    size = [len(members) for members in components]
    within = [0] * len(components)
    comp_successors: list[set[int]] = [set() for _ in components]
    for src, dst, _ in graph.edges:
        cs, cd = component_of[src], component_of[dst]
        if cs == cd:
            within[cs] += 1
        else:
            comp_successors[cs].add(cd)
    cyclic = [size[c] > 1 or within[c] > 0 for c in range(len(components))]
    tangled = [within[c] > size[c] for c in range(len(components))]

    out_degree = [0] * n
    for src, _, _ in graph.edges:
        out_degree[src] += 1
    degree_ok = [
        all(out_degree[v] == 1 for v in members) for members in components
    ]

    # Tarjan emits successors before predecessors, so one forward pass
    # over the component list resolves all reachability predicates.
    reaches_tangle = [False] * len(components)
    downstream_cycle = [False] * len(components)
    chained = [False] * len(components)
    deterministic = [False] * len(components)
    for c in range(len(components)):
        succ = sorted(comp_successors[c])
        reaches_tangle[c] = tangled[c] or any(reaches_tangle[d] for d in succ)
        downstream_cycle[c] = any(
            cyclic[d] or downstream_cycle[d] for d in succ
        )
        chained[c] = (cyclic[c] and downstream_cycle[c]) or any(
            chained[d] for d in succ
        )
        deterministic[c] = degree_ok[c] and all(deterministic[d] for d in succ)
    return _CycleStructure(
        component_of=tuple(component_of),
        reaches_tangle=tuple(reaches_tangle),
        chained_cycles=tuple(chained),
        deterministic=tuple(deterministic),
    )


def classify_intersection(graph: NeighborGraph, vertex: int) -> str:
    """Cardinality class of the boundary set belonging to one neighbor type.

    Uncountable iff some reachable strongly connected component carries
    two distinct cycles; Singleton iff every reachable vertex has exactly
    one outgoing edge counted with multiplicity; CountablyInfinite iff a
    reachable cycle can still reach a different cycle; Finite otherwise.
    """
    structure = _cycle_structure(graph)
    comp = structure.component_of[vertex]
    if structure.reaches_tangle[comp]:
        return UNCOUNTABLE
    if structure.deterministic[comp]:
        return SINGLETON
    if structure.chained_cycles[comp]:
        return COUNTABLY_INFINITE
    return FINITE


def classify_all(graph: NeighborGraph) -> tuple[str, ...]:
    return tuple(classify_intersection(graph, v) for v in range(len(graph.vertices)))


def has_jordan_curve(gc: ConnectednessGraph, classes: tuple[str, ...]) -> bool:
    """A closed curve exists iff pieces close a ring or some boundary set
    is more than a point."""
    return gc.has_cycle or any(cls != SINGLETON for cls in classes)


def attractor_class(gc: ConnectednessGraph, classes: tuple[str, ...]) -> str:
    if not gc.connected:
        return TOTALLY_DISCONNECTED
    if any(cls == UNCOUNTABLE for cls in classes):
        return UNCOUNTABLE_CARPET
    if any(cls == COUNTABLY_INFINITE for cls in classes):
        return COUNTABLE_WEB
    if all(cls == SINGLETON for cls in classes) and not has_jordan_curve(gc, classes):
        return DENDRITE
    return PCF


@dataclass(frozen=True, slots=True)
class TopologyReport:
    connected: bool
    has_jordan_curve: bool
    classes: tuple[str, ...]
    classification: str


def topology_report(m: int, graph: NeighborGraph | None) -> TopologyReport:
    """Report for a Graph outcome, or for Empty when graph is None."""
    if graph is None:
        gc = connectedness_graph(m, [])
        return TopologyReport(
            connected=gc.connected,
            has_jordan_curve=False,
            classes=(),
            classification=attractor_class(gc, ()),
        )
    gc = connectedness_graph(m, graph.initial_labels())
    classes = classify_all(graph)
    return TopologyReport(
        connected=gc.connected,
        has_jordan_curve=has_jordan_curve(gc, classes),
        classes=classes,
        classification=attractor_class(gc, classes),
    )
