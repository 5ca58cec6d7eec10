"""Append-only JSON-lines store of analysis records.

One record per line, keyed by spec hash.  Appends go through a process
lock and land with flush + fsync, so a crash can lose at most the line
being written; loading tolerates exactly that (a trailing partial line
is skipped, anything torn earlier is a corrupt file and raises).
"""

from __future__ import annotations

import json
import os
import threading
from datetime import datetime, timezone

from .model import SchemaError
from .records import ExampleRecord, canonical_record_json, record_from_json, with_persistence


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class Collection:
    """Insertion-ordered record store backed by a JSONL file."""

    def __init__(self, path: str):
        self.path = path
        self.name = os.path.splitext(os.path.basename(path))[0]
        self.created_at = _utc_now()
        self._lock = threading.Lock()
        self._records: dict[str, ExampleRecord] = {}
        self._load()

    def _load(self) -> None:
        if not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="ascii") as handle:
            lines = handle.read().split("\n")
        for lineno, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                record = record_from_json(json.loads(line))
            except json.JSONDecodeError:
                if lineno == len(lines) - 1 or (
                    lineno == len(lines) - 2 and not lines[-1].strip()
                ):
                    break  # torn trailing write from a crashed append
                raise SchemaError(f"{self.path}:{lineno + 1}: corrupt record line")
            self._records.setdefault(record.id, record)

    def append(self, record: ExampleRecord, *, parent: str | None = None) -> ExampleRecord:
        """Persist a record, stamping created_at; duplicate ids are kept as-is."""
        with self._lock:
            existing = self._records.get(record.id)
            if existing is not None:
                return existing
            stamped = with_persistence(record, parent=parent, created_at=_utc_now())
            line = canonical_record_json(stamped) + "\n"
            with open(self.path, "a", encoding="ascii") as handle:
                handle.write(line)
                handle.flush()
                os.fsync(handle.fileno())
            self._records[stamped.id] = stamped
            return stamped

    def get(self, record_id: str) -> ExampleRecord | None:
        with self._lock:
            return self._records.get(record_id)

    def records(self) -> list[ExampleRecord]:
        """Insertion-ordered snapshot."""
        with self._lock:
            return list(self._records.values())

    def __len__(self) -> int:
        with self._lock:
            return len(self._records)

    def __contains__(self, record_id: str) -> bool:
        with self._lock:
            return record_id in self._records
