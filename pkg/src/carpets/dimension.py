"""Hausdorff dimension of the attractor and of its boundary sets.

With equal contraction factor r = det(M)^-1/2, the attractor dimension
is the similarity value 2 log m / log det M.  Boundary sets satisfy a
graph-directed system read straight off the neighbor graph, so their
common dimension comes from the spectral radius of the edge-count
matrix; per-vertex values restrict that matrix to what the vertex can
reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import strongly_connected_components
from .model import IfsSpec
from .neighbors import NeighborGraph

POWER_TOL = 1e-10
POWER_MAX_ITER = 100_000


def attractor_dimension(spec: IfsSpec) -> float:
    det = float(spec.expansion_det())
    return 2.0 * math.log(spec.m) / math.log(det)


def edge_count_matrix(graph: NeighborGraph) -> np.ndarray:
    n = len(graph.vertices)
    counts = np.zeros((n, n), dtype=np.float64)
    for src, dst, _ in graph.edges:
        counts[src, dst] += 1.0
    return counts


def power_spectral_radius(
    matrix: np.ndarray, tol: float = POWER_TOL, max_iter: int = POWER_MAX_ITER
) -> float:
    """Largest eigenvalue modulus of a nonnegative matrix by power iteration.

    Iterates x -> x + A x: the shift moves the spectrum off the unit
    circle so periodic edge-count matrices converge too, and it keeps x
    entrywise positive, so the quotient bounds min_i y_i/x_i - 1 and
    max_i y_i/x_i - 1 always bracket the radius.  Termination on bracket
    width certifies the result; a growth-rate estimate covers reducible
    inputs whose bracket never closes.
    """
    n = matrix.shape[0]
    if n == 0:
        return 0.0
    x = np.full(n, 1.0 / n)
    estimate = 0.0
    for _ in range(max_iter):
        y = x + matrix @ x
        quotients = y / x
        lo = float(quotients.min()) - 1.0
        hi = float(quotients.max()) - 1.0
        if hi - lo < tol:
            return (lo + hi) / 2.0
        total = float(y.sum())
        estimate = total - 1.0
        x = y / total
    return estimate


Equation = tuple[int, tuple[tuple[int, int], ...]]


def boundary_equations(graph: NeighborGraph) -> tuple[Equation, ...]:
    """Graph-directed system, one equation per vertex: B_h as unions of maps.

    An edge h' -> h labelled (k, j) contributes the term f_k(B_h') to
    the equation of its target, so each boundary set is expressed
    through the types it is assembled from, first labels only.  Sources
    of the graph get an empty right-hand side.
    """
    terms: list[list[tuple[int, int]]] = [[] for _ in graph.vertices]
    for src, dst, (k, _) in graph.edges:
        terms[dst].append((k, src))
    return tuple((v, tuple(entries)) for v, entries in enumerate(terms))


@dataclass(frozen=True, slots=True)
class DimensionReport:
    alpha: float
    beta_global: float
    spectral_radius: float
    beta_per_vertex: tuple[float, ...]
    equations: tuple[Equation, ...]


def dimension_report(spec: IfsSpec, graph: NeighborGraph) -> DimensionReport:
    """Dimension data for a successfully built neighbor graph."""
    log_det = math.log(float(spec.expansion_det()))
    alpha = 2.0 * math.log(spec.m) / log_det

    counts = edge_count_matrix(graph)
    adjacency = graph.out_adjacency()
    components = strongly_connected_components(adjacency)
    n = len(adjacency)
    component_of = [0] * n
    for comp_id, members in enumerate(components):
        for vertex in members:
            component_of[vertex] = comp_id
    comp_successors: list[set[int]] = [set() for _ in components]
    for src, dst, _ in graph.edges:
        cs, cd = component_of[src], component_of[dst]
        if cs != cd:
            comp_successors[cs].add(cd)

    rho_local: list[float] = []
    for members in components:
        if len(members) == 1 and counts[members[0], members[0]] == 0.0:
            rho_local.append(0.0)
            continue
        block = counts[np.ix_(members, members)]
        rho_local.append(power_spectral_radius(block))

    # Tarjan's order has successors first, so reachable maxima fold up
    # in one pass.
    rho_reach = [0.0] * len(components)
    for c in range(len(components)):
        best = rho_local[c]
        for d in comp_successors[c]:
            best = max(best, rho_reach[d])
        rho_reach[c] = best

    def beta_of(rho: float) -> float:
        if rho <= 1.0:
            return 0.0
        return 2.0 * math.log(rho) / log_det

    per_vertex = tuple(beta_of(rho_reach[component_of[v]]) for v in range(n))
    spectral_radius = max(rho_local, default=0.0)
    return DimensionReport(
        alpha=alpha,
        beta_global=beta_of(spectral_radius),
        spectral_radius=spectral_radius,
        beta_per_vertex=per_vertex,
        equations=boundary_equations(graph),
    )
