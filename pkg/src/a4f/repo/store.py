"""Append-only JSON-lines store with an in-memory index.

One writer at a time appends whole lines under a lock; readers work
against immutable dicts already indexed in memory.  On startup the log is
replayed to rebuild the index; a line that fails to decode marks the store
corrupt.  ``healthcheck`` re-verifies the tail of the file so a service
can surface on-disk corruption without restarting.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from ..errors import StoreCorruptError


class LogStore:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.entries: list[dict] = []
        self._load()

    def _load(self):
        if not self.path.exists():
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.touch()
            return
        with self.path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError as e:
                    raise StoreCorruptError(
                        f"store log {self.path} line {lineno} is not valid "
                        f"JSON: {e}") from e
                if not isinstance(entry, dict) or "type" not in entry:
                    raise StoreCorruptError(
                        f"store log {self.path} line {lineno} is not a "
                        "typed record")
                self.entries.append(entry)

    def append(self, entry: dict):
        line = json.dumps(entry, separators=(",", ":"), sort_keys=True)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self.entries.append(entry)

    def healthcheck(self):
        """Verify the last non-empty line on disk still parses.

        Raises StoreCorruptError with a diagnostic otherwise.
        """
        try:
            data = self.path.read_bytes()
        except OSError as e:
            raise StoreCorruptError(f"store log unreadable: {e}") from e
        tail = data.decode("utf-8", errors="replace").strip().splitlines()
        if not tail:
            return
        last = tail[-1]
        try:
            entry = json.loads(last)
        except json.JSONDecodeError as e:
            raise StoreCorruptError(
                f"store log tail is not valid JSON: {e}") from e
        if not isinstance(entry, dict) or "type" not in entry:
            raise StoreCorruptError("store log tail is not a typed record")
