"""Analysis records: one spec plus everything computed from it.

The JSON form is canonical: fixed key order, compact separators, floats
through repr.  The same spec therefore produces byte-identical record
text wherever it is analyzed, and the record id is the content hash of
the canonical spec JSON alone, so persisted analyses can be re-checked
against their spec at any time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .dimension import DimensionReport, dimension_report
from .linalg import Affine, Mat2, Vec2, format_rational, parse_rational
from .model import (
    IfsSpec,
    SchemaError,
    canonical_spec_json,
    spec_from_json,
    spec_id,
    spec_to_json,
    validate,
)
from .neighbors import (
    BuildOutcome,
    BuildStats,
    Empty,
    Graph,
    NeighborGraph,
    OscViolation,
    TooComplex,
    build,
)
from .topology import TopologyReport, topology_report


class ValidationFailed(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True, slots=True)
class ExampleRecord:
    spec: IfsSpec
    outcome: BuildOutcome
    topology: TopologyReport | None
    dimension: DimensionReport | None
    parent: str | None = None
    created_at: str | None = None

    @property
    def id(self) -> str:
        return spec_id(self.spec)

    @property
    def graph(self) -> NeighborGraph | None:
        if isinstance(self.outcome, Graph):
            return self.outcome.graph
        return None

    @property
    def neighbor_count(self) -> int | None:
        if isinstance(self.outcome, Graph):
            return self.outcome.graph.type_count
        if isinstance(self.outcome, Empty):
            return 0
        return None

    @property
    def fli(self) -> int | None:
        if isinstance(self.outcome, Graph):
            return self.outcome.graph.fli
        if isinstance(self.outcome, Empty):
            return 0
        return None


def analyze(
    spec: IfsSpec, max_types: int = 100, max_candidates: int = 100_000
) -> ExampleRecord:
    """Validate, build the neighbor graph and derive both reports."""
    violations = validate(spec)
    if violations:
        raise ValidationFailed(violations)
    outcome = build(spec, max_types=max_types, max_candidates=max_candidates)
    topology = None
    dimension = None
    if isinstance(outcome, Graph):
        topology = topology_report(spec.m, outcome.graph)
        dimension = dimension_report(spec, outcome.graph)
    elif isinstance(outcome, Empty):
        topology = topology_report(spec.m, None)
    return ExampleRecord(spec=spec, outcome=outcome, topology=topology, dimension=dimension)


# --- JSON ------------------------------------------------------------


def graph_to_json(graph: NeighborGraph) -> dict:
    def name(index: int) -> str:
        return graph.vertex_name(index)

    return {
        "m": graph.m,
        "vertices": [
            {
                "name": name(i),
                "linear": [format_rational(q) for q in vertex.linear.entries()],
                "shift": [
                    format_rational(vertex.shift.x),
                    format_rational(vertex.shift.y),
                ],
            }
            for i, vertex in enumerate(graph.vertices)
        ],
        "edges": [
            {"src": name(src), "dst": name(dst), "label": [k, j]}
            for src, dst, (k, j) in graph.edges
        ],
        "initial": [
            {"dst": name(dst), "label": [k, j]} for dst, (k, j) in graph.initial
        ],
    }


def _graph_from_json(data: dict) -> NeighborGraph:
    vertices = []
    index_by_name: dict[str, int] = {}
    for i, item in enumerate(data["vertices"]):
        index_by_name[item["name"]] = i
        entries = [parse_rational(q) for q in item["linear"]]
        shift = [parse_rational(q) for q in item["shift"]]
        vertices.append(
            Affine(Mat2(*entries), Vec2(shift[0], shift[1]))
        )
    edges = tuple(
        (
            index_by_name[item["src"]],
            index_by_name[item["dst"]],
            (item["label"][0], item["label"][1]),
        )
        for item in data["edges"]
    )
    initial = tuple(
        (index_by_name[item["dst"]], (item["label"][0], item["label"][1]))
        for item in data["initial"]
    )
    return NeighborGraph(
        m=data["m"], vertices=tuple(vertices), edges=edges, initial=initial
    )


def _topology_to_json(report: TopologyReport) -> dict:
    return {
        "connected": report.connected,
        "has_jordan_curve": report.has_jordan_curve,
        "classes": list(report.classes),
        "classification": report.classification,
    }


def _dimension_to_json(report: DimensionReport, graph: NeighborGraph) -> dict:
    return {
        "alpha": report.alpha,
        "beta_global": report.beta_global,
        "spectral_radius": report.spectral_radius,
        "beta_per_vertex": list(report.beta_per_vertex),
        "boundary_equations": [
            {
                "vertex": graph.vertex_name(v),
                "terms": [
                    {"k": k, "src": graph.vertex_name(src)} for k, src in terms
                ],
            }
            for v, terms in report.equations
        ],
    }


def _outcome_to_json(outcome: BuildOutcome) -> dict:
    if isinstance(outcome, Graph):
        return {"kind": "graph"}
    if isinstance(outcome, Empty):
        return {"kind": "empty"}
    if isinstance(outcome, TooComplex):
        return {"kind": "too_complex", "candidates": outcome.candidate_count}
    if isinstance(outcome, OscViolation):
        return {
            "kind": "osc_violation",
            "witness": [list(outcome.witness[0]), list(outcome.witness[1])],
        }
    raise TypeError(f"unknown outcome {outcome!r}")


def record_to_json(record: ExampleRecord) -> dict:
    graph = record.graph
    return {
        "id": record.id,
        "spec": spec_to_json(record.spec),
        "outcome": _outcome_to_json(record.outcome),
        "neighbor_count": record.neighbor_count,
        "fli": record.fli,
        "graph": graph_to_json(graph) if graph is not None else None,
        "topology": _topology_to_json(record.topology) if record.topology else None,
        "dimension": (
            _dimension_to_json(record.dimension, graph)
            if record.dimension is not None and graph is not None
            else None
        ),
        "stats": {
            "compositions": record.outcome.stats.compositions,
            "pruned_far": record.outcome.stats.pruned_far,
            "explored": record.outcome.stats.explored,
        },
        "parent": record.parent,
        "created_at": record.created_at,
    }


def canonical_record_json(record: ExampleRecord) -> str:
    return json.dumps(record_to_json(record), separators=(",", ":"))


def record_from_json(data: object) -> ExampleRecord:
    """Rebuild a record, re-checking the id against the spec content."""
    if not isinstance(data, dict):
        raise SchemaError("record: expected an object")
    required = {
        "id",
        "spec",
        "outcome",
        "neighbor_count",
        "fli",
        "graph",
        "topology",
        "dimension",
        "stats",
        "parent",
        "created_at",
    }
    missing = required - set(data)
    if missing:
        raise SchemaError(f"record: missing key(s) {', '.join(sorted(missing))}")
    unknown = set(data) - required
    if unknown:
        raise SchemaError(f"record: unknown key(s) {', '.join(sorted(unknown))}")
    spec = spec_from_json(data["spec"])
    if data["id"] != spec_id(spec):
        raise SchemaError("record: id does not match the spec content hash")
    stats_obj = data["stats"]
    stats = BuildStats(
        compositions=stats_obj["compositions"],
        pruned_far=stats_obj["pruned_far"],
        explored=stats_obj["explored"],
    )
    outcome_obj = data["outcome"]
    kind = outcome_obj.get("kind")
    graph = _graph_from_json(data["graph"]) if data["graph"] is not None else None
    if kind == "graph":
        if graph is None:
            raise SchemaError("record: graph outcome without graph data")
        outcome: BuildOutcome = Graph(graph=graph, stats=stats)
    elif kind == "empty":
        outcome = Empty(stats=stats)
    elif kind == "too_complex":
        outcome = TooComplex(candidate_count=outcome_obj["candidates"], stats=stats)
    elif kind == "osc_violation":
        witness = outcome_obj["witness"]
        outcome = OscViolation(
            witness=(tuple(witness[0]), tuple(witness[1])), stats=stats
        )
    else:
        raise SchemaError(f"record: unknown outcome kind {kind!r}")
    topology = None
    if data["topology"] is not None:
        t = data["topology"]
        topology = TopologyReport(
            connected=t["connected"],
            has_jordan_curve=t["has_jordan_curve"],
            classes=tuple(t["classes"]),
            classification=t["classification"],
        )
    dimension = None
    if data["dimension"] is not None:
        if graph is None:
            raise SchemaError("record: dimension report without graph data")
        d = data["dimension"]
        name_index = {graph.vertex_name(i): i for i in range(len(graph.vertices))}
        equations = tuple(
            (
                name_index[eq["vertex"]],
                tuple((term["k"], name_index[term["src"]]) for term in eq["terms"]),
            )
            for eq in d["boundary_equations"]
        )
        dimension = DimensionReport(
            alpha=d["alpha"],
            beta_global=d["beta_global"],
            spectral_radius=d["spectral_radius"],
            beta_per_vertex=tuple(d["beta_per_vertex"]),
            equations=equations,
        )
    return ExampleRecord(
        spec=spec,
        outcome=outcome,
        topology=topology,
        dimension=dimension,
        parent=data["parent"],
        created_at=data["created_at"],
    )


def with_persistence(record: ExampleRecord, *, parent: str | None = None, created_at: str | None = None) -> ExampleRecord:
    return replace(record, parent=parent if parent is not None else record.parent,
                   created_at=created_at if created_at is not None else record.created_at)


def export_record(record: ExampleRecord, path: str) -> None:
    with open(path, "w", encoding="ascii") as handle:
        handle.write(canonical_record_json(record))
        handle.write("\n")


def import_record(path: str) -> ExampleRecord:
    with open(path, "r", encoding="ascii") as handle:
        data = json.load(handle)
    return record_from_json(data)
