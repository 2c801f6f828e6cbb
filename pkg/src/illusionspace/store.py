"""Append-only directory store for fitted model entries.

Each entry is one canonical-JSON file named ``<model_id>.json``. Entries are
immutable: writing an existing id raises instead of overwriting, so a store
directory is a faithful log of every fit that produced it.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
from datetime import datetime, timezone
from pathlib import Path

from .documents import canonical_json
from .errors import ModelNotFoundError, StoreConflictError

_MODEL_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


def input_digest(data: bytes) -> str:
    """Content digest recorded with each entry; changes iff the input bytes change."""
    return "sha256:" + hashlib.sha256(data).hexdigest()


def validate_model_id(model_id: str) -> str:
    if not _MODEL_ID_RE.match(model_id):
        raise ValueError(
            f"model id {model_id!r} must match {_MODEL_ID_RE.pattern} (filesystem-safe)"
        )
    return model_id


class ModelStore:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, model_id: str) -> Path:
        return self.root / f"{validate_model_id(model_id)}.json"

    def write(self, model_id: str, entry: dict) -> Path:
        """Persist a new entry; existing ids are refused, never replaced."""
        path = self._path(model_id)
        if path.exists():
            raise StoreConflictError(f"model {model_id!r} already exists in {self.root}")
        stamped = dict(entry)
        stamped.setdefault("created_at", datetime.now(timezone.utc).isoformat())
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(canonical_json(stamped) + "\n", encoding="utf-8")
        os.replace(tmp, path)
        return path

    def read(self, model_id: str) -> dict:
        path = self._path(model_id)
        if not path.exists():
            raise ModelNotFoundError(f"no model {model_id!r} in {self.root}")
        return json.loads(path.read_text(encoding="utf-8"))

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    def __contains__(self, model_id: str) -> bool:
        try:
            return self._path(model_id).exists()
        except ValueError:
            return False
