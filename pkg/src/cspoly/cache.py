"""Content-addressed on-disk cache for rendered CLI results."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .errors import CacheCorrupt

log = logging.getLogger(__name__)

ENV_VAR = "CSPOLY_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "cspoly"


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def config_key(config: dict) -> str:
    return _sha256(json.dumps(config, sort_keys=True, separators=(",", ":")))


class ResultCache:
    """Maps a canonical job description to the exact output text it produced."""

    def __init__(self, root: Path | str):
        self.root = Path(root)

    def path_for(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def load(self, key: str) -> str | None:
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
            payload = entry["payload"]
            if entry.get("key") != key or entry.get("checksum") != _sha256(payload):
                raise CacheCorrupt(f"checksum mismatch in {path}")
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorrupt(f"unreadable cache entry {path}") from exc
        return payload

    def store(self, key: str, payload: str) -> Path:
        path = self.path_for(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = json.dumps({"key": key, "checksum": _sha256(payload), "payload": payload}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(entry)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def get_or_compute(self, config: dict, compute) -> str:
        key = config_key(config)
        try:
            hit = self.load(key)
        except CacheCorrupt as exc:
            log.warning("%s; recomputing", exc)
            hit = None
        if hit is not None:
            return hit
        payload = compute()
        self.store(key, payload)
        return payload
