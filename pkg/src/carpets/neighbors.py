"""Neighbor graph construction for a validated IFS.

The relative position of two pieces f_w(A), f_v(A) is the isometry
h = f_w^-1 f_v; the pieces touch iff h(A) meets A.  Starting from the
sibling positions f_k^-1 f_j, positions of subpiece pairs are generated
by the successor rule h' = f_k^-1 h f_j.  Two prunings keep the process
finite in the good cases:

* ball test: the attractor sits in a ball of radius delta/(1-r) around
  the centroid, so a candidate moving the centroid beyond twice that
  radius is certainly not a neighbor, and neither are its successors
  (distances grow by 1/r per level);
* cycle test: a true neighbor admits arbitrarily deep subpiece pairs
  that still touch, so every vertex of the final graph must start an
  infinite path.  Candidates from which every route dies are deleted.

The identity appearing as a candidate means two distinct piece words
name overlapping sets, i.e. the open set condition fails; construction
aborts with the witness words.  Growth past the candidate cap aborts
with TooComplex: nothing is decided about such systems.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .fields import gram_norm_sq
from .linalg import Affine, Vec2
from .model import IfsSpec, centroid, contractions, pruning_radius_sq

DEFAULT_MAX_TYPES = 100
DEFAULT_MAX_CANDIDATES = 100_000

Label = tuple[int, int]
Word = tuple[int, ...]


def canonical_key(h: Affine) -> tuple[Fraction, ...]:
    """Six reduced rationals identifying an affine map exactly."""
    return h.key()


@dataclass(frozen=True, slots=True)
class BuildContext:
    """Per-spec data the candidate loop needs over and over."""

    spec: IfsSpec
    maps: tuple[Affine, ...]
    inverses: tuple[Affine, ...]
    center: Vec2
    threshold_sq: Fraction

    @property
    def m(self) -> int:
        return len(self.maps)


def prepare(spec: IfsSpec) -> BuildContext:
    fs = tuple(contractions(spec))
    return BuildContext(
        spec=spec,
        maps=fs,
        inverses=tuple(f.inverse() for f in fs),
        center=centroid(spec),
        threshold_sq=pruning_radius_sq(spec),
    )


def is_certainly_far(ctx: BuildContext, h: Affine) -> bool:
    """Exact ball test: h cannot be a neighbor map, nor can its successors."""
    offset = h(ctx.center) - ctx.center
    return gram_norm_sq(ctx.spec.field, offset) > ctx.threshold_sq


def successors(ctx: BuildContext, h: Affine) -> list[tuple[Label, Affine]]:
    """All m^2 successor candidates f_k^-1 h f_j with their labels."""
    result = []
    for k in range(ctx.m):
        lifted = ctx.inverses[k].compose(h)
        for j in range(ctx.m):
            result.append(((k + 1, j + 1), lifted.compose(ctx.maps[j])))
    return result


@dataclass(frozen=True, slots=True)
class BuildStats:
    compositions: int
    pruned_far: int
    explored: int

    @property
    def prune_ratio(self) -> float:
        if self.compositions == 0:
            return 0.0
        return self.pruned_far / self.compositions


@dataclass(frozen=True, slots=True)
class NeighborGraph:
    """Edge-labelled automaton of neighbor types.

    Vertices are the surviving neighbor maps in discovery order and are
    named n1..nK; edges carry (k, j) labels with 1-based map indices.
    Initial edges come from the root compositions f_k^-1 f_j.
    """

    m: int
    vertices: tuple[Affine, ...]
    edges: tuple[tuple[int, int, Label], ...]
    initial: tuple[tuple[int, Label], ...]

    @property
    def type_count(self) -> int:
        return len(self.vertices)

    @property
    def fli(self) -> int:
        """Count of initial labels (k, j) with k < j (one per unordered pair)."""
        return sum(1 for _, (k, j) in self.initial if k < j)

    def vertex_name(self, index: int) -> str:
        return f"n{index + 1}"

    def vertex_index(self, h: Affine) -> int | None:
        key = h.key()
        for index, vertex in enumerate(self.vertices):
            if vertex.key() == key:
                return index
        return None

    def out_adjacency(self) -> list[list[int]]:
        """Successor lists with multiplicity, indexed by vertex."""
        adj: list[list[int]] = [[] for _ in self.vertices]
        for src, dst, _ in self.edges:
            adj[src].append(dst)
        return adj

    def initial_labels(self) -> list[Label]:
        return [label for _, label in self.initial]


@dataclass(frozen=True, slots=True)
class Graph:
    graph: NeighborGraph
    stats: BuildStats
    kind = "graph"


@dataclass(frozen=True, slots=True)
class Empty:
    """All sibling pieces are certifiably apart: the pieces are disjoint."""

    stats: BuildStats
    kind = "empty"


@dataclass(frozen=True, slots=True)
class TooComplex:
    candidate_count: int
    stats: BuildStats
    kind = "too_complex"


@dataclass(frozen=True, slots=True)
class OscViolation:
    witness: tuple[Word, Word]
    stats: BuildStats
    kind = "osc_violation"


BuildOutcome = Graph | Empty | TooComplex | OscViolation


def build(
    spec: IfsSpec,
    max_types: int = DEFAULT_MAX_TYPES,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> BuildOutcome:
    """Breadth-first closure of the successor rule with both prunings.

    Deterministic: roots and successors are visited in ascending (k, j)
    order through a FIFO frontier, so vertex numbering, edge order and
    all downstream reports depend only on the spec.
    """
    ctx = prepare(spec)
    m = ctx.m
    compositions = 0
    pruned_far = 0
    affines: list[Affine] = []
    words: list[tuple[Word, Word]] = []
    index_of: dict[tuple[Fraction, ...], int] = {}
    # src -1 marks initial edges; vertex ids are candidate discovery ids
    # until the survivor renumbering at the end.
    edge_list: list[tuple[int, int, Label]] = []
    frontier: deque[int] = deque()

    def stats() -> BuildStats:
        return BuildStats(compositions, pruned_far, len(affines))

    def intern(h: Affine, word_pair: tuple[Word, Word]) -> int:
        key = h.key()
        found = index_of.get(key)
        if found is not None:
            return found
        index = len(affines)
        index_of[key] = index
        affines.append(h)
        words.append(word_pair)
        frontier.append(index)
        return index

    for k in range(1, m + 1):
        for j in range(1, m + 1):
            if k == j:
                continue
            h = ctx.inverses[k - 1].compose(ctx.maps[j - 1])
            compositions += 1
            if h.is_identity():
                return OscViolation(witness=((k,), (j,)), stats=stats())
            if is_certainly_far(ctx, h):
                pruned_far += 1
                continue
            edge_list.append((-1, intern(h, ((k,), (j,))), (k, j)))

    while frontier:
        current = frontier.popleft()
        h = affines[current]
        word_w, word_v = words[current]
        for k in range(1, m + 1):
            lifted = ctx.inverses[k - 1].compose(h)
            for j in range(1, m + 1):
                candidate = lifted.compose(ctx.maps[j - 1])
                compositions += 1
                if candidate.is_identity():
                    return OscViolation(
                        witness=(word_w + (k,), word_v + (j,)), stats=stats()
                    )
                if is_certainly_far(ctx, candidate):
                    pruned_far += 1
                    continue
                index = intern(candidate, (word_w + (k,), word_v + (j,)))
                if len(affines) > max_candidates:
                    return TooComplex(candidate_count=len(affines), stats=stats())
                edge_list.append((current, index, (k, j)))

    # Cycle pruning: repeatedly drop candidates with no outgoing edge.
    count = len(affines)
    out_degree = [0] * count
    predecessors: list[list[int]] = [[] for _ in range(count)]
    for src, dst, _ in edge_list:
        if src >= 0:
            out_degree[src] += 1
            predecessors[dst].append(src)
    alive = [True] * count
    dead = deque(i for i in range(count) if out_degree[i] == 0)
    while dead:
        vertex = dead.popleft()
        if not alive[vertex]:
            continue
        alive[vertex] = False
        for pred in predecessors[vertex]:
            if alive[pred]:
                out_degree[pred] -= 1
                if out_degree[pred] == 0:
                    dead.append(pred)

    renumber: dict[int, int] = {}
    for old in range(count):
        if alive[old]:
            renumber[old] = len(renumber)
    initial = tuple(
        (renumber[dst], label)
        for src, dst, label in edge_list
        if src == -1 and alive[dst]
    )
    if not initial:
        return Empty(stats=stats())
    if len(renumber) > max_types:
        return TooComplex(candidate_count=len(affines), stats=stats())
    vertices = tuple(affines[old] for old in renumber)
    edges = tuple(
        (renumber[src], renumber[dst], label)
        for src, dst, label in edge_list
        if src >= 0 and alive[src] and alive[dst]
    )
    graph = NeighborGraph(m=m, vertices=vertices, edges=edges, initial=initial)
    return Graph(graph=graph, stats=stats())
