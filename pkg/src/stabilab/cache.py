"""On-disk JSON cache for character tables and Groebner basis runs.

Disk caching is off unless a directory is configured, either by
``set_cache_dir`` or through the ``STABILAB_CACHE`` environment variable.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

ENV_VAR = "STABILAB_CACHE"
DEFAULT_DIR = Path.home() / ".cache" / "stabilab"

_configured: Path | None = None


def set_cache_dir(path: str | os.PathLike | None) -> None:
    global _configured
    _configured = None if path is None else Path(path)


def cache_dir() -> Path | None:
    """The active cache directory, or None when disk caching is disabled."""
    if _configured is not None:
        return _configured
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


def read_json(name: str) -> Any | None:
    root = cache_dir()
    if root is None:
        return None
    path = root / name
    if not path.is_file():
        return None
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError):
        return None


def exists(name: str) -> bool:
    root = cache_dir()
    return root is not None and (root / name).is_file()


def write_json(name: str, payload: Any) -> Path | None:
    """Write atomically (temp file then rename).  Returns the path written."""
    root = cache_dir()
    if root is None:
        return None
    root.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=root, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, root / name)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return root / name


def list_entries(root: Path) -> list[str]:
    if not root.is_dir():
        return []
    return sorted(p.name for p in root.iterdir() if p.suffix == ".json" and not p.name.startswith("."))


def clear(root: Path) -> int:
    removed = 0
    for name in list_entries(root):
        (root / name).unlink()
        removed += 1
    return removed
