"""Advisory on-disk cache of graded invariant dimensions.

The cache is read only to answer ``dims`` queries and is never consulted by a
verdict. A mismatch between a cached and a freshly computed value is logged
and the fresh value wins.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

log = logging.getLogger(__name__)

FORMAT = "modinv-dims-1"


def cache_key(q: int, modulus: int, m: int, group: str) -> str:
    return f"q={q};modulus={modulus};m={m};group={group}"


class DimCache:
    def __init__(self, path: str | os.PathLike | None):
        self.path = Path(path) if path else None
        self.entries: dict[str, dict[str, int]] = {}
        self.dirty = False
        if self.path and self.path.exists():
            self._load()

    def _load(self) -> None:
        try:
            doc = json.loads(self.path.read_text())
            if doc.get("format") != FORMAT or not isinstance(doc.get("entries"), dict):
                raise ValueError("unrecognized cache layout")
            entries = {}
            for key, dims in doc["entries"].items():
                entries[str(key)] = {str(int(d)): int(v) for d, v in dims.items()}
            self.entries = entries
        except (OSError, ValueError, TypeError, AttributeError) as exc:
            log.warning("ignoring unreadable cache %s: %s", self.path, exc)
            self.entries = {}

    def get(self, key: str, d: int) -> int | None:
        return self.entries.get(key, {}).get(str(d))

    def put(self, key: str, d: int, dim: int) -> None:
        slot = self.entries.setdefault(key, {})
        old = slot.get(str(d))
        if old is not None and old != dim:
            log.warning("cache entry %s d=%d was %d, recomputed %d", key, d, old, dim)
        if old != dim:
            slot[str(d)] = dim
            self.dirty = True

    def save(self) -> None:
        if not self.path or not self.dirty:
            return
        doc = {"format": FORMAT, "entries": self.entries}
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True, indent=1))
        tmp.replace(self.path)
        self.dirty = False
