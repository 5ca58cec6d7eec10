"""Command line front end.

Exit codes are the machine contract: 1 for schema or validation
failures, 2 when the analysis hits its caps, 3 when the open set
condition is refuted.  Record JSON on stdout is canonical, byte-equal
to what the HTTP service returns for the same spec.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .fields import euclid_triples
from .model import SchemaError, parse_spec_text
from .records import ExampleRecord, ValidationFailed, analyze, canonical_record_json
from .render import RenderRequest, export_dot, render, to_png, to_ppm
from .search import SearchStats, config_from_json, run_search
from .service import create_app


def _fail(message: str, code: int = 1):
    click.echo(message, err=True)
    sys.exit(code)


def _summary_line(record: ExampleRecord) -> str:
    parts = [f"types={record.neighbor_count}", f"fli={record.fli}"]
    if record.dimension is not None:
        parts.append(f"alpha={record.dimension.alpha:.4f}")
        parts.append(f"beta={record.dimension.beta_global:.4f}")
    parts.append(f"class={record.topology.classification}")
    return " ".join(parts)


def _analyze_file(spec_file: str, max_types: int | None, max_candidates: int | None) -> ExampleRecord:
    try:
        with open(spec_file, "r", encoding="utf-8") as handle:
            spec = parse_spec_text(handle.read())
    except OSError as exc:
        _fail(f"cannot read {spec_file}: {exc}")
    except SchemaError as exc:
        _fail(str(exc))
    kwargs = {}
    if max_types is not None:
        kwargs["max_types"] = max_types
    if max_candidates is not None:
        kwargs["max_candidates"] = max_candidates
    try:
        return analyze(spec, **kwargs)
    except ValidationFailed as exc:
        for violation in exc.violations:
            click.echo(violation, err=True)
        sys.exit(1)


def _exit_for_outcome(record: ExampleRecord) -> None:
    kind = record.outcome.kind
    if kind == "too_complex":
        click.echo(
            f"too complex: gave up after {record.outcome.candidate_count} candidates",
            err=True,
        )
        sys.exit(2)
    if kind == "osc_violation":
        words, vords = record.outcome.witness
        left = "".join(str(k) for k in words)
        right = "".join(str(k) for k in vords)
        click.echo(
            f"open set condition violated: pieces {left} and {right} coincide",
            err=True,
        )
        sys.exit(3)


@click.group()
def main() -> None:
    """Exact analysis of self-similar sets with quadratic-field symmetries."""


@main.command("analyze")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-types", type=int, default=None, help="Neighbor type cap.")
@click.option("--max-candidates", type=int, default=None, help="Candidate map cap.")
@click.option("--json", "mode", flag_value="json", default=True, help="Print the full record (default).")
@click.option("--summary", "mode", flag_value="summary", help="Print a one-line summary.")
def analyze_command(spec_file: str, max_types, max_candidates, mode: str) -> None:
    """Build the neighbor graph of SPEC_FILE and report on it."""
    record = _analyze_file(spec_file, max_types, max_candidates)
    if record.outcome.kind in ("too_complex", "osc_violation"):
        click.echo(canonical_record_json(record))
        _exit_for_outcome(record)
    if mode == "summary":
        click.echo(_summary_line(record))
    else:
        click.echo(canonical_record_json(record))


@main.command("search")
@click.argument("config_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--workers", type=int, default=None, help="Analysis worker processes (default MAX_WORKERS).")
def search_command(config_file: str, out: str, workers) -> None:
    """Run a randomized family search, one record JSON per output line."""
    try:
        with open(config_file, "r", encoding="utf-8") as handle:
            config = config_from_json(json.load(handle))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(f"cannot read config: {exc}")
    except SchemaError as exc:
        _fail(str(exc))
    if workers is None:
        raw = os.environ.get("MAX_WORKERS", "").strip()
        workers = int(raw) if raw else None
    stats = SearchStats()
    found = run_search(config, max_workers=workers, stats=stats)
    with open(out, "w", encoding="ascii") as handle:
        for record in found:
            handle.write(canonical_record_json(record))
            handle.write("\n")
    click.echo(
        f"tried={stats.tried} analyzed={stats.analyzed} found={stats.found} "
        f"prune_ratio={stats.prune_ratio:.3f} rate={stats.candidates_per_second:.1f}/s",
        err=True,
    )


@main.command("render")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--window", default=None, help="cx,cy,half_width in standard coordinates.")
@click.option("--width", type=int, default=512)
@click.option("--height", type=int, default=512)
@click.option("--depth", type=int, default=None, help="Word length; default fits a piece to a pixel.")
@click.option("--coloring", type=click.Choice(["mono", "first", "second"]), default="mono")
@click.option("--format", "fmt", type=click.Choice(["ppm", "png"]), default=None,
              help="Default: by --out extension, falling back to ppm.")
def render_command(spec_file, out, window, width, height, depth, coloring, fmt) -> None:
    """Rasterize the attractor of SPEC_FILE."""
    try:
        with open(spec_file, "r", encoding="utf-8") as handle:
            spec = parse_spec_text(handle.read())
    except (OSError, SchemaError) as exc:
        _fail(str(exc))
    parsed_window = None
    if window is not None:
        try:
            parts = [float(p) for p in window.split(",")]
            if len(parts) != 3:
                raise ValueError
            parsed_window = (parts[0], parts[1], parts[2])
        except ValueError:
            _fail("--window must be cx,cy,half_width")
    if fmt is None:
        fmt = "png" if out.lower().endswith(".png") else "ppm"
    request = RenderRequest(
        width=width, height=height, depth=depth, window=parsed_window, coloring=coloring
    )
    try:
        result = render(spec, request)
        payload = to_png(result) if fmt == "png" else to_ppm(result)
    except (ValueError, RuntimeError) as exc:
        _fail(str(exc))
    with open(out, "wb") as handle:
        handle.write(payload)
    if result.capped:
        click.echo(f"depth capped at {result.depth}", err=True)


@main.command("export-dot")
@click.argument("spec_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-types", type=int, default=None)
@click.option("--max-candidates", type=int, default=None)
def export_dot_command(spec_file: str, max_types, max_candidates) -> None:
    """Print the neighbor graph of SPEC_FILE as DOT."""
    record = _analyze_file(spec_file, max_types, max_candidates)
    _exit_for_outcome(record)
    click.echo(export_dot(record.graph), nl=False)


@main.command("triples")
@click.option("-d", "d", type=int, required=True, help="Squarefree field discriminant part.")
@click.option("--bound", type=int, required=True, help="Upper bound on w.")
def triples_command(d: int, bound: int) -> None:
    """List generalized Pythagorean triples u^2 + d v^2 = w^2."""
    try:
        rows = euclid_triples(d, bound)
    except ValueError as exc:
        _fail(str(exc))
    for u, v, w in rows:
        click.echo(f"{u} {v} {w}")


@main.command("serve")
@click.option("--bind", default=None, help="host:port (default BIND_ADDR or 127.0.0.1:8000).")
@click.option("--collection", "collection_path", default=None,
              help="Record store path (default COLLECTION_PATH or collection.jsonl).")
@click.option("--workers", type=int, default=None, help="Analysis workers per job (default MAX_WORKERS).")
def serve_command(bind, collection_path, workers) -> None:
    """Run the HTTP service."""
    import uvicorn

    bind = bind or os.environ.get("BIND_ADDR", "127.0.0.1:8000")
    host, _, port = bind.partition(":")
    app = create_app(collection_path=collection_path, max_workers=workers)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or "8000"))


if __name__ == "__main__":
    main()
