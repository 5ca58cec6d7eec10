"""Exact analysis of planar self-similar sets with quadratic-field symmetries."""

from .fields import (
    ExpansionReport,
    FieldSpec,
    euclid_triples,
    expansion_report,
    make_field,
)
from .model import (
    IfsSpec,
    MapSpec,
    SchemaError,
    Symmetry,
    canonical_spec_json,
    make_spec,
    parse_spec_text,
    spec_from_json,
    spec_id,
    spec_to_json,
    validate,
)
from .neighbors import (
    Empty,
    Graph,
    NeighborGraph,
    OscViolation,
    TooComplex,
    build,
)
from .topology import TopologyReport, topology_report
from .dimension import DimensionReport, dimension_report
from .records import (
    ExampleRecord,
    ValidationFailed,
    analyze,
    canonical_record_json,
    export_record,
    import_record,
    record_from_json,
    record_to_json,
)
from .render import RenderRequest, RenderResult, export_dot, render, to_ppm
from .search import SearchConfig, SearchStats, config_from_json, run_search
from .collection import Collection
from .service import create_app

__version__ = "0.1.0"

__all__ = [
    "Collection",
    "DimensionReport",
    "Empty",
    "ExampleRecord",
    "ExpansionReport",
    "FieldSpec",
    "Graph",
    "IfsSpec",
    "MapSpec",
    "NeighborGraph",
    "OscViolation",
    "RenderRequest",
    "RenderResult",
    "SchemaError",
    "SearchConfig",
    "SearchStats",
    "Symmetry",
    "TooComplex",
    "TopologyReport",
    "ValidationFailed",
    "analyze",
    "build",
    "canonical_record_json",
    "canonical_spec_json",
    "config_from_json",
    "create_app",
    "dimension_report",
    "euclid_triples",
    "expansion_report",
    "export_dot",
    "export_record",
    "import_record",
    "make_field",
    "make_spec",
    "parse_spec_text",
    "record_from_json",
    "record_to_json",
    "render",
    "run_search",
    "spec_from_json",
    "spec_id",
    "spec_to_json",
    "to_ppm",
    "topology_report",
    "validate",
    "__version__",
]
