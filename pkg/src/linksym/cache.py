"""On-disk cache for subgroup enumerations.

Entries live in ``<dir>/<key>.json`` and carry a sha256 checksum of their
payload.  A missing or damaged entry is recomputed and rewritten; damage is
reported on stderr through the ``linksym.cache`` logger.  Caching is off
unless a directory is given or ``LINKSYM_CACHE_DIR`` is set.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any, Callable

from .groups import FiniteGroup
from .subgroups import SubgroupRecord, all_subgroups

ENV_VAR = "LINKSYM_CACHE_DIR"
FORMAT = 1

log = logging.getLogger(__name__)


def canonical_bytes(payload: Any) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def resolve_dir(flag: str | os.PathLike | None) -> Path | None:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


class Cache:
    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory else None
        self.hits = 0
        self.misses = 0

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def _read(self, key: str) -> Any | None:
        path = self.path(key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            ok = entry.get("format") == FORMAT and \
                entry["sha256"] == hashlib.sha256(canonical_bytes(payload)).hexdigest()
        except (ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            log.warning("cache entry %s failed its checksum; recomputing", path)
            return None
        return payload

    def _write(self, key: str, payload: Any) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = {"format": FORMAT, "key": key, "payload": payload,
                 "sha256": hashlib.sha256(canonical_bytes(payload)).hexdigest()}
        tmp = self.path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps(entry, sort_keys=True))
        tmp.replace(self.path(key))

    def get_or_compute(self, key: str, compute: Callable[[], Any]) -> Any:
        """``compute()``'s JSON payload, loaded from disk when a valid entry exists."""
        if not self.enabled:
            self.misses += 1
            return compute()
        payload = self._read(key)
        if payload is not None:
            self.hits += 1
            return payload
        self.misses += 1
        payload = json.loads(canonical_bytes(compute()))
        self._write(key, payload)
        return payload


def cached_subgroups(G: FiniteGroup, cache: Cache) -> list[SubgroupRecord]:
    """:func:`all_subgroups`, going through ``cache`` under the group's descriptor hash."""
    key = f"subgroups-{G.descriptor_hash}"
    payload = cache.get_or_compute(key, lambda: [r.to_json() for r in all_subgroups(G)])
    return [SubgroupRecord.from_json(r) for r in payload]
