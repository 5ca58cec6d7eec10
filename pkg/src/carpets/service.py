"""HTTP facade: analysis, the example collection, search jobs, renders.

Everything lives under /api/v1.  Analysis responses reuse the canonical
record bytes so the service and the CLI emit identical JSON for the same
spec.  Search runs as background jobs pulled off a queue by a fixed
number of runner threads (one by default, so a laptop stays responsive);
cancellation is cooperative and keeps whatever was found so far.
"""

from __future__ import annotations

import itertools
import json
import os
import queue
import secrets
import threading
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.responses import JSONResponse, PlainTextResponse, Response

from .collection import Collection
from .model import SchemaError, spec_from_json
from .records import (
    ExampleRecord,
    ValidationFailed,
    analyze,
    canonical_record_json,
    record_to_json,
)
from .render import RenderRequest, export_dot, render, to_png, to_ppm
from .search import (
    SearchConfig,
    SearchStats,
    _candidate_rng,
    config_from_json,
    config_to_json,
    family_from_spec,
    mutate,
    run_search,
)

DEFAULT_COLLECTION = "collection.jsonl"

PENDING = "Pending"
RUNNING = "Running"
DONE = "Done"
CANCELLED = "Cancelled"


@dataclass
class SearchJob:
    id: str
    config: SearchConfig
    state: str = PENDING
    tried: int = 0
    found: int = 0
    result_ids: list[str] = field(default_factory=list)
    cancel: threading.Event = field(default_factory=threading.Event)

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "state": self.state,
            "config": config_to_json(self.config),
            "progress": {"tried": self.tried, "found": self.found},
            "result_ids": list(self.result_ids),
        }


class JobRegistry:
    def __init__(self, collection: Collection, max_workers: int | None, runners: int):
        self.collection = collection
        self.max_workers = max_workers
        self.runners = runners
        self.jobs: dict[str, SearchJob] = {}
        self.lock = threading.Lock()
        self.queue: queue.Queue[str | None] = queue.Queue()
        self.threads: list[threading.Thread] = []

    def start(self) -> None:
        for i in range(self.runners):
            t = threading.Thread(target=self._runner, name=f"search-runner-{i}", daemon=True)
            t.start()
            self.threads.append(t)

    def stop(self) -> None:
        for job in self.jobs.values():
            job.cancel.set()
        for _ in self.threads:
            self.queue.put(None)
        for t in self.threads:
            t.join(timeout=5)

    def submit(self, config: SearchConfig) -> SearchJob:
        job = SearchJob(id=uuid.uuid4().hex[:12], config=config)
        with self.lock:
            self.jobs[job.id] = job
        self.queue.put(job.id)
        return job

    def get(self, job_id: str) -> SearchJob | None:
        with self.lock:
            return self.jobs.get(job_id)

    def request_cancel(self, job: SearchJob) -> bool:
        """True if the cancel was accepted, False when the job already ended."""
        with self.lock:
            if job.state in (DONE, CANCELLED):
                return False
            job.cancel.set()
            if job.state == PENDING:
                job.state = CANCELLED
            return True

    def _runner(self) -> None:
        while True:
            job_id = self.queue.get()
            if job_id is None:
                return
            job = self.get(job_id)
            if job is None:
                continue
            with self.lock:
                if job.state != PENDING:
                    continue
                job.state = RUNNING

            def on_progress(stats: SearchStats, job=job):
                with self.lock:
                    job.tried = stats.tried
                    job.found = stats.found

            stats = SearchStats()
            records = run_search(
                job.config,
                max_workers=self.max_workers,
                progress=on_progress,
                should_stop=job.cancel.is_set,
                stats=stats,
            )
            stored_ids = []
            for record in records:
                stored = self.collection.append(record)
                stored_ids.append(stored.id)
            with self.lock:
                job.tried = stats.tried
                job.found = stats.found
                job.result_ids = stored_ids
                job.state = CANCELLED if job.cancel.is_set() else DONE


def _error(status: int, payload: dict) -> JSONResponse:
    return JSONResponse(payload, status_code=status)


def _record_response(record: ExampleRecord) -> Response:
    return Response(content=canonical_record_json(record), media_type="application/json")


def _parse_window(raw: str | None):
    if raw is None:
        return None
    parts = raw.split(",")
    if len(parts) != 3:
        raise ValueError("window must be cx,cy,half_width")
    cx, cy, hw = (float(p) for p in parts)
    if hw <= 0:
        raise ValueError("window half width must be positive")
    return (cx, cy, hw)


_COMPLEXITY_TAIL = "x"  # sorts records without a type count last


def _complexity_key(record: ExampleRecord):
    count = record.neighbor_count
    return (count is None, count if count is not None else 0, record.id)


def _encode_cursor(record: ExampleRecord, sort: str) -> str:
    if sort == "complexity":
        count = record.neighbor_count
        head = _COMPLEXITY_TAIL if count is None else str(count)
        return f"{head}:{record.id}"
    return record.id


def _after_cursor(ordered: list[ExampleRecord], cursor: str, sort: str) -> list[ExampleRecord]:
    head, _, tail = cursor.partition(":")
    if not tail:
        raise ValueError("bad cursor")
    if head == _COMPLEXITY_TAIL:
        key = (True, 0, tail)
    else:
        key = (False, int(head), tail)
    return [r for r in ordered if _complexity_key(r) > key]


def _apply_filters(records: list[ExampleRecord], params) -> list[ExampleRecord]:
    connected = params.get("connected")
    attractor_class = params.get("class") or params.get("attractor_class")
    bounds = {}
    for name in ("min_types", "max_types", "min_fli", "max_fli"):
        raw = params.get(name)
        if raw is not None:
            bounds[name] = int(raw)
    out = []
    for rec in records:
        if connected is not None:
            if rec.topology is None:
                continue
            want = connected.lower() in ("1", "true", "yes")
            if rec.topology.connected != want:
                continue
        if attractor_class is not None:
            if rec.topology is None or rec.topology.classification != attractor_class:
                continue
        count = rec.neighbor_count
        fli = rec.fli
        if "min_types" in bounds and (count is None or count < bounds["min_types"]):
            continue
        if "max_types" in bounds and (count is None or count > bounds["max_types"]):
            continue
        if "min_fli" in bounds and (fli is None or fli < bounds["min_fli"]):
            continue
        if "max_fli" in bounds and (fli is None or fli > bounds["max_fli"]):
            continue
        out.append(rec)
    return out


def create_app(
    collection_path: str | None = None,
    max_workers: int | None = None,
    job_runners: int = 1,
) -> FastAPI:
    if collection_path is None:
        collection_path = os.environ.get("COLLECTION_PATH", DEFAULT_COLLECTION)
    if max_workers is None:
        raw = os.environ.get("MAX_WORKERS", "").strip()
        max_workers = int(raw) if raw else None

    collection = Collection(collection_path)
    registry = JobRegistry(collection, max_workers, job_runners)
    seed_lock = threading.Lock()
    seed_counter = itertools.count(secrets.randbits(48))

    def fresh_seed() -> int:
        with seed_lock:
            return next(seed_counter)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        registry.start()
        yield
        registry.stop()

    app = FastAPI(title="carpets", lifespan=lifespan)
    app.state.collection = collection
    app.state.registry = registry

    # --- analysis ---------------------------------------------------

    @app.post("/api/v1/analyze")
    async def analyze_endpoint(request: Request):
        try:
            body = json.loads(await request.body())
        except json.JSONDecodeError as exc:
            return _error(400, {"violations": [f"invalid JSON: {exc.msg}"]})
        try:
            spec = spec_from_json(body)
        except SchemaError as exc:
            return _error(400, {"violations": [str(exc)]})
        try:
            record = await run_in_threadpool(analyze, spec)
        except ValidationFailed as exc:
            return _error(400, {"violations": exc.violations})
        if record.outcome.kind == "too_complex":
            return _error(
                422,
                {"error": "too_complex", "candidates": record.outcome.candidate_count},
            )
        return _record_response(record)

    # --- search jobs ------------------------------------------------

    @app.post("/api/v1/search")
    async def start_search(request: Request):
        try:
            body = json.loads(await request.body())
            config = config_from_json(body)
        except json.JSONDecodeError as exc:
            return _error(400, {"violations": [f"invalid JSON: {exc.msg}"]})
        except SchemaError as exc:
            return _error(400, {"violations": [str(exc)]})
        job = registry.submit(config)
        return JSONResponse({"job_id": job.id, "state": job.state}, status_code=202)

    @app.get("/api/v1/search/{job_id}")
    async def job_status(job_id: str):
        job = registry.get(job_id)
        if job is None:
            return _error(404, {"error": "unknown job"})
        with registry.lock:
            return JSONResponse(job.snapshot())

    @app.post("/api/v1/search/{job_id}/cancel")
    async def cancel_job(job_id: str):
        job = registry.get(job_id)
        if job is None:
            return _error(404, {"error": "unknown job"})
        if not registry.request_cancel(job):
            return _error(409, {"error": f"job already {job.state.lower()}"})
        with registry.lock:
            return JSONResponse(job.snapshot())

    # --- collection -------------------------------------------------

    @app.get("/api/v1/examples")
    async def list_examples(request: Request):
        params = request.query_params
        sort = params.get("sort", "created")
        if sort not in ("created", "complexity"):
            return _error(400, {"error": "sort must be created or complexity"})
        try:
            limit = int(params.get("limit", "20"))
        except ValueError:
            return _error(400, {"error": "bad limit"})
        limit = max(1, min(limit, 100))
        everything = collection.records()
        cursor = params.get("cursor")
        try:
            if sort == "created":
                # cut on insertion order first so pages stay stable as
                # new records append behind the cursor
                if cursor is not None:
                    positions = {r.id: i for i, r in enumerate(everything)}
                    if cursor not in positions:
                        return _error(400, {"error": "bad cursor"})
                    everything = everything[positions[cursor] + 1 :]
                pool = _apply_filters(everything, params)
            else:
                pool = _apply_filters(everything, params)
                pool.sort(key=_complexity_key)
                if cursor is not None:
                    pool = _after_cursor(pool, cursor, sort)
        except ValueError:
            return _error(400, {"error": "bad cursor or filter value"})
        page = pool[:limit]
        next_cursor = _encode_cursor(page[-1], sort) if len(pool) > limit else None
        return JSONResponse(
            {
                "records": [record_to_json(r) for r in page],
                "next_cursor": next_cursor,
                "total": len(collection),
            }
        )

    @app.get("/api/v1/examples/{record_id}")
    async def get_example(record_id: str):
        record = collection.get(record_id)
        if record is None:
            return _error(404, {"error": "unknown record"})
        return _record_response(record)

    @app.post("/api/v1/examples/{record_id}/mutate")
    async def mutate_example(record_id: str):
        parent = collection.get(record_id)
        if parent is None:
            return _error(404, {"error": "unknown record"})
        seed = fresh_seed()
        config = family_from_spec(parent.spec, seed=seed)
        rng = _candidate_rng(seed, 0)
        try:
            child_spec = mutate(parent.spec, rng, config)
        except ValueError:
            return _error(422, {"error": "stuck"})
        child = await run_in_threadpool(analyze, child_spec)
        if child.outcome.kind == "too_complex":
            return _error(
                422,
                {"error": "too_complex", "candidates": child.outcome.candidate_count},
            )
        stored = collection.append(child, parent=parent.id)
        return _record_response(stored)

    # --- renders and exports ----------------------------------------

    @app.get("/api/v1/examples/{record_id}/render")
    async def render_example(record_id: str, request: Request):
        record = collection.get(record_id)
        if record is None:
            return _error(404, {"error": "unknown record"})
        params = request.query_params
        try:
            width = int(params.get("w", "512"))
            height = int(params.get("h", "512"))
            depth = int(params["depth"]) if "depth" in params else None
            window = _parse_window(params.get("window"))
            coloring = params.get("coloring", "mono")
            fmt = params.get("format", "ppm")
            if fmt not in ("ppm", "png"):
                raise ValueError("format must be ppm or png")
            req = RenderRequest(
                width=width, height=height, depth=depth, window=window, coloring=coloring
            )
            result = await run_in_threadpool(render, record.spec, req)
        except (ValueError, KeyError) as exc:
            return _error(400, {"error": str(exc)})
        # the resolved window lets a client turn pixel rectangles into
        # follow-up window parameters without redoing the fit itself
        headers = {"X-Render-Window": ",".join(repr(v) for v in result.window)}
        if fmt == "png":
            return Response(content=to_png(result), media_type="image/png", headers=headers)
        return Response(
            content=to_ppm(result), media_type="image/x-portable-pixmap", headers=headers
        )

    @app.get("/api/v1/examples/{record_id}/neighborgraph.dot")
    async def graph_dot(record_id: str):
        record = collection.get(record_id)
        if record is None:
            return _error(404, {"error": "unknown record"})
        return PlainTextResponse(export_dot(record.graph), media_type="text/vnd.graphviz")

    return app


def main() -> None:  # pragma: no cover - thin uvicorn wrapper
    import uvicorn

    bind = os.environ.get("BIND_ADDR", "127.0.0.1:8000")
    host, _, port = bind.partition(":")
    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port or "8000"))
