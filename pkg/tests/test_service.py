"""HTTP facade: route behavior, job lifecycle, pagination contracts."""

import json
import time
from collections import Counter
from dataclasses import replace

import pytest
from fastapi.testclient import TestClient

from carpets.model import canonical_spec_json, make_spec, spec_from_json
from carpets.records import analyze, canonical_record_json
from carpets.search import make_config, config_to_json
from carpets.service import create_app
from carpets.render import RenderRequest, render, to_ppm
from tests.conftest import rotation_maps

API = "/api/v1"


def det4_search_body(budget, seed=11, **filters):
    config = make_config(
        0, 0, 2, m_range=(2, 3), translation_box=1, symmetry_word_length=0,
        budget=budget, seed=seed,
    )
    body = config_to_json(config)
    if filters:
        body["filters"] = filters
    return body


def wait_for(client, job_id, state, deadline=60.0):
    end = time.monotonic() + deadline
    while time.monotonic() < end:
        snap = client.get(f"{API}/search/{job_id}").json()
        if snap["state"] == state:
            return snap
        time.sleep(0.02)
    raise AssertionError(f"job {job_id} never reached {state}")


@pytest.fixture
def client(tmp_path):
    with TestClient(create_app(str(tmp_path / "store.jsonl"))) as c:
        yield c


@pytest.fixture(scope="module")
def corpus_client(tmp_path_factory, rotation_spec, triangle_spec, square2_spec,
                  square3_spec, carpet_spec, cantor_spec, duplicate_map_spec):
    """A collection seeded with the classical examples, in a known order."""
    path = tmp_path_factory.mktemp("service") / "corpus.jsonl"
    app = create_app(str(path))
    specs = [rotation_spec, triangle_spec, square2_spec, square3_spec,
             carpet_spec, cantor_spec, duplicate_map_spec]
    ids = [app.state.collection.append(analyze(s)).id for s in specs]
    with TestClient(app) as c:
        yield c, ids


# --- analysis ---------------------------------------------------------


def test_analyze_reuses_canonical_record_bytes(client, rotation_spec, rotation_record):
    resp = client.post(f"{API}/analyze", content=canonical_spec_json(rotation_spec))
    assert resp.status_code == 200
    assert resp.headers["content-type"] == "application/json"
    assert resp.content == canonical_record_json(rotation_record).encode()


def test_analyze_does_not_persist(client, rotation_spec):
    client.post(f"{API}/analyze", content=canonical_spec_json(rotation_spec))
    assert len(client.app.state.collection) == 0


def test_analyze_rejects_invalid_json(client):
    resp = client.post(f"{API}/analyze", content="{oops")
    assert resp.status_code == 400
    assert resp.json()["violations"][0].startswith("invalid JSON")


def test_analyze_rejects_malformed_documents(client):
    resp = client.post(f"{API}/analyze", content='{"maps": []}')
    assert resp.status_code == 400
    assert len(resp.json()["violations"]) == 1


def test_analyze_reports_semantic_violations(client, rotation_spec):
    doc = json.loads(canonical_spec_json(rotation_spec))
    doc["maps"] = doc["maps"][:1]  # parses fine, fails validation
    resp = client.post(f"{API}/analyze", content=json.dumps(doc))
    assert resp.status_code == 400
    assert resp.json()["violations"]


def test_analyze_reports_capped_runs(client, rotation_spec, monkeypatch):
    capped = analyze(rotation_spec, max_types=3)
    monkeypatch.setattr("carpets.service.analyze", lambda spec: capped)
    resp = client.post(f"{API}/analyze", content=canonical_spec_json(rotation_spec))
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"] == "too_complex"
    assert body["candidates"] == capped.outcome.candidate_count


def test_analyze_returns_failed_outcomes_as_records(client, duplicate_map_spec):
    resp = client.post(f"{API}/analyze", content=canonical_spec_json(duplicate_map_spec))
    assert resp.status_code == 200
    assert resp.json()["outcome"]["kind"] == "osc_violation"


# --- search jobs ------------------------------------------------------


def test_search_job_runs_to_done(client):
    resp = client.post(f"{API}/search", json=det4_search_body(128))
    assert resp.status_code == 202
    job_id = resp.json()["job_id"]
    assert resp.json()["state"] == "Pending"

    snap = wait_for(client, job_id, "Done")
    assert snap["progress"]["tried"] == 128
    assert snap["progress"]["found"] == len(snap["result_ids"]) > 0
    assert snap["config"] == det4_search_body(128)

    store = client.app.state.collection
    for rid in snap["result_ids"]:
        stored = store.get(rid)
        assert stored is not None
        assert stored.created_at is not None
        got = client.get(f"{API}/examples/{rid}")
        assert got.status_code == 200
        assert got.content == canonical_record_json(stored).encode()


def test_search_rejects_bad_configs(client):
    assert client.post(f"{API}/search", content="nope").status_code == 400
    body = det4_search_body(4)
    body["rng"] = "lcg"
    resp = client.post(f"{API}/search", json=body)
    assert resp.status_code == 400
    assert "rng" in resp.json()["violations"][0]


def test_job_status_unknown_id(client):
    assert client.get(f"{API}/search/nope").status_code == 404
    assert client.post(f"{API}/search/nope/cancel").status_code == 404


def test_cancel_running_job_keeps_partial_results(client):
    job_id = client.post(f"{API}/search", json=det4_search_body(100000)).json()["job_id"]
    deadline = time.monotonic() + 60
    while time.monotonic() < deadline:
        snap = client.get(f"{API}/search/{job_id}").json()
        if snap["progress"]["tried"] > 0:
            break
        time.sleep(0.02)
    else:
        raise AssertionError("job never made progress")

    resp = client.post(f"{API}/search/{job_id}/cancel")
    assert resp.status_code == 200
    snap = wait_for(client, job_id, "Cancelled")
    assert snap["progress"]["tried"] < 100000
    store = client.app.state.collection
    assert all(rid in store for rid in snap["result_ids"])

    again = client.post(f"{API}/search/{job_id}/cancel")
    assert again.status_code == 409
    assert "cancelled" in again.json()["error"]


def test_cancel_pending_job_skips_the_run(client):
    blocker = client.post(f"{API}/search", json=det4_search_body(100000)).json()["job_id"]
    pending = client.post(f"{API}/search", json=det4_search_body(64, seed=5)).json()["job_id"]

    resp = client.post(f"{API}/search/{pending}/cancel")
    assert resp.status_code == 200
    assert resp.json()["state"] == "Cancelled"
    assert resp.json()["result_ids"] == []

    client.post(f"{API}/search/{blocker}/cancel")
    wait_for(client, blocker, "Cancelled")
    # the runner must not resurrect the cancelled pending job
    assert client.get(f"{API}/search/{pending}").json()["state"] == "Cancelled"


def test_cancel_done_job_conflicts(client):
    job_id = client.post(f"{API}/search", json=det4_search_body(64)).json()["job_id"]
    wait_for(client, job_id, "Done")
    resp = client.post(f"{API}/search/{job_id}/cancel")
    assert resp.status_code == 409
    assert "done" in resp.json()["error"]


def test_search_jobs_store_only_filter_hits(client):
    body = det4_search_body(128, min_types=6)
    job_id = client.post(f"{API}/search", json=body).json()["job_id"]
    snap = wait_for(client, job_id, "Done")
    assert snap["result_ids"]
    store = client.app.state.collection
    for rid in snap["result_ids"]:
        assert store.get(rid).neighbor_count >= 6


# --- collection browsing ----------------------------------------------


def test_get_example_unknown_id(client):
    assert client.get(f"{API}/examples/deadbeef").status_code == 404


def test_list_examples_created_order_pages(corpus_client):
    client, ids = corpus_client
    page = client.get(f"{API}/examples", params={"limit": 3}).json()
    assert [r["id"] for r in page["records"]] == ids[:3]
    assert page["total"] == 7
    assert page["next_cursor"] == ids[2]

    page2 = client.get(f"{API}/examples", params={"limit": 3, "cursor": ids[2]}).json()
    assert [r["id"] for r in page2["records"]] == ids[3:6]

    page3 = client.get(
        f"{API}/examples", params={"limit": 3, "cursor": page2["next_cursor"]}
    ).json()
    assert [r["id"] for r in page3["records"]] == ids[6:]
    assert page3["next_cursor"] is None


def test_list_examples_cursor_cuts_before_filtering(corpus_client):
    client, ids = corpus_client
    # cursor sits on a record the filter would drop; paging must still
    # resume right after it
    resp = client.get(
        f"{API}/examples", params={"cursor": ids[1], "min_types": 8}
    ).json()
    assert [r["id"] for r in resp["records"]] == ids[2:5]


def test_list_examples_complexity_sort(corpus_client):
    client, ids = corpus_client
    resp = client.get(f"{API}/examples", params={"sort": "complexity", "limit": 100})
    got = [r["id"] for r in resp.json()["records"]]
    assert len(got) == 7
    # cantor (0 types) first, the osc violation (no count) last
    assert got[0] == ids[5]
    assert got[1] == ids[0]
    assert got[2] == ids[1]
    assert set(got[3:6]) == {ids[2], ids[3], ids[4]}
    assert got[3:6] == sorted(got[3:6])
    assert got[6] == ids[6]


def test_list_examples_complexity_pages_are_disjoint(corpus_client):
    client, _ = corpus_client
    seen = []
    cursor = None
    while True:
        params = {"sort": "complexity", "limit": 2}
        if cursor is not None:
            params["cursor"] = cursor
        page = client.get(f"{API}/examples", params=params).json()
        seen.extend(r["id"] for r in page["records"])
        cursor = page["next_cursor"]
        if cursor is None:
            break
    assert len(seen) == 7
    assert len(set(seen)) == 7


def test_list_examples_filters(corpus_client):
    client, ids = corpus_client

    def fetch(**params):
        params["limit"] = 100
        resp = client.get(f"{API}/examples", params=params)
        assert resp.status_code == 200
        return [r["id"] for r in resp.json()["records"]]

    assert fetch(connected="true") == ids[:5]
    assert fetch(connected="false") == [ids[5]]
    assert fetch(min_fli=12) == [ids[3], ids[4]]
    assert fetch(max_types=5) == [ids[0], ids[5]]
    assert fetch(min_types=1, max_fli=3) == [ids[0], ids[1]]
    assert ids[6] not in fetch(min_types=0)


def test_list_examples_rejects_bad_parameters(corpus_client):
    client, ids = corpus_client
    assert client.get(f"{API}/examples", params={"sort": "age"}).status_code == 400
    assert client.get(f"{API}/examples", params={"limit": "many"}).status_code == 400
    assert client.get(f"{API}/examples", params={"cursor": "zzz"}).status_code == 400
    assert (
        client.get(
            f"{API}/examples", params={"sort": "complexity", "cursor": "zzz"}
        ).status_code
        == 400
    )


# --- mutation ---------------------------------------------------------


def test_mutate_stores_a_child_record(client, rotation_record):
    parent = client.app.state.collection.append(rotation_record)
    resp = client.post(f"{API}/examples/{parent.id}/mutate")
    assert resp.status_code == 200
    body = resp.json()
    assert body["parent"] == parent.id
    assert body["created_at"] is not None

    child = client.app.state.collection.get(body["id"])
    assert child is not None
    assert resp.content == canonical_record_json(child).encode()

    # the child differs from the parent in at most one map slot
    parent_keys = Counter(
        (mp.sym.x, mp.sym.y, mp.sym.reflected, mp.t.x, mp.t.y)
        for mp in parent.spec.maps
    )
    child_spec = spec_from_json(body["spec"])
    child_keys = Counter(
        (mp.sym.x, mp.sym.y, mp.sym.reflected, mp.t.x, mp.t.y)
        for mp in child_spec.maps
    )
    delta = (parent_keys - child_keys) + (child_keys - parent_keys)
    assert sum(delta.values()) <= 2


def test_mutated_child_reanalyzes_to_its_stored_report(client, rotation_record):
    parent = client.app.state.collection.append(rotation_record)
    body = client.post(f"{API}/examples/{parent.id}/mutate").json()
    child = client.app.state.collection.get(body["id"])

    # lineage stamps aside, the stored report is exactly what a fresh
    # analysis of the child spec produces
    fresh = analyze(child.spec)
    assert canonical_record_json(fresh) == canonical_record_json(
        replace(child, parent=None, created_at=None)
    )


def test_mutate_unknown_parent(client):
    assert client.post(f"{API}/examples/none/mutate").status_code == 404


def test_mutate_reports_stuck_families(client, rotation_record, monkeypatch):
    parent = client.app.state.collection.append(rotation_record)

    def stuck(spec, rng, config):
        raise ValueError("stuck")

    monkeypatch.setattr("carpets.service.mutate", stuck)
    resp = client.post(f"{API}/examples/{parent.id}/mutate")
    assert resp.status_code == 422
    assert resp.json()["error"] == "stuck"
    assert len(client.app.state.collection) == 1


def test_mutate_does_not_store_capped_children(client, rotation_record, monkeypatch):
    parent = client.app.state.collection.append(rotation_record)
    capped = analyze(parent.spec, max_types=3)
    monkeypatch.setattr("carpets.service.analyze", lambda spec: capped)
    resp = client.post(f"{API}/examples/{parent.id}/mutate")
    assert resp.status_code == 422
    assert resp.json()["error"] == "too_complex"
    assert len(client.app.state.collection) == 1


# --- renders and exports ----------------------------------------------


def test_render_ppm_matches_library_output(client, rotation_record):
    parent = client.app.state.collection.append(rotation_record)
    resp = client.get(
        f"{API}/examples/{parent.id}/render",
        params={"w": 40, "h": 30, "depth": 3, "coloring": "first"},
    )
    assert resp.status_code == 200
    assert resp.headers["content-type"] == "image/x-portable-pixmap"
    assert resp.content.startswith(b"P6\n40 30\n255\n")

    expected = to_ppm(
        render(parent.spec, RenderRequest(width=40, height=30, depth=3, coloring="first"))
    )
    assert resp.content == expected


def test_render_png(client, rotation_record):
    parent = client.app.state.collection.append(rotation_record)
    resp = client.get(
        f"{API}/examples/{parent.id}/render",
        params={"w": 24, "h": 24, "depth": 2, "format": "png"},
    )
    assert resp.status_code == 200
    assert resp.headers["content-type"] == "image/png"
    assert resp.content.startswith(b"\x89PNG\r\n")


def test_render_accepts_windows(client, rotation_record):
    parent = client.app.state.collection.append(rotation_record)
    resp = client.get(
        f"{API}/examples/{parent.id}/render",
        params={"w": 16, "h": 16, "depth": 2, "window": "0.5,0.5,0.25"},
    )
    assert resp.status_code == 200
    assert resp.headers["x-render-window"] == "0.5,0.5,0.25"


def test_render_reports_the_resolved_auto_window(client, rotation_record):
    parent = client.app.state.collection.append(rotation_record)
    resp = client.get(f"{API}/examples/{parent.id}/render", params={"w": 16, "h": 16, "depth": 2})
    cx, cy, hw = (float(v) for v in resp.headers["x-render-window"].split(","))
    expected = render(parent.spec, RenderRequest(width=16, height=16, depth=2)).window
    assert (cx, cy, hw) == expected


@pytest.mark.parametrize(
    "params",
    [
        {"format": "jpeg"},
        {"window": "0,0"},
        {"window": "0,0,-1"},
        {"window": "a,b,c"},
        {"coloring": "rainbow"},
        {"w": "wide"},
    ],
)
def test_render_rejects_bad_parameters(client, rotation_record, params):
    parent = client.app.state.collection.append(rotation_record)
    query = {"w": 16, "h": 16, "depth": 2}
    query.update(params)
    resp = client.get(f"{API}/examples/{parent.id}/render", params=query)
    assert resp.status_code == 400
    assert "error" in resp.json()


def test_render_unknown_record(client):
    assert client.get(f"{API}/examples/none/render").status_code == 404


def test_graph_dot_export(client, rotation_record):
    parent = client.app.state.collection.append(rotation_record)
    resp = client.get(f"{API}/examples/{parent.id}/neighborgraph.dot")
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("text/vnd.graphviz")
    assert 'n5 -> n4 [label="1,1"];' in resp.text


def test_graph_dot_for_empty_outcome_is_root_only(client, cantor_spec):
    stored = client.app.state.collection.append(analyze(cantor_spec))
    resp = client.get(f"{API}/examples/{stored.id}/neighborgraph.dot")
    assert resp.status_code == 200
    assert resp.text == 'digraph neighbors {\n  rankdir=LR;\n  id [shape=point, label=""];\n}\n'


def test_graph_dot_unknown_record(client):
    assert client.get(f"{API}/examples/none/neighborgraph.dot").status_code == 404


# --- wiring -----------------------------------------------------------


def test_collection_path_from_environment(tmp_path, monkeypatch, rotation_record):
    path = tmp_path / "env.jsonl"
    monkeypatch.setenv("COLLECTION_PATH", str(path))
    app = create_app()
    app.state.collection.append(rotation_record)
    assert path.exists()


def test_collection_survives_restart(tmp_path, rotation_record):
    path = str(tmp_path / "persist.jsonl")
    with TestClient(create_app(path)) as client:
        client.app.state.collection.append(rotation_record)
    with TestClient(create_app(path)) as client:
        resp = client.get(f"{API}/examples/{rotation_record.id}")
        assert resp.status_code == 200
        assert resp.json()["id"] == rotation_record.id
