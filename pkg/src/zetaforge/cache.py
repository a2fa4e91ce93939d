"""On-disk cache of evaluated central binomial sums.

One JSON file per (term, digits, truncation K).  Values are stored as
decimal strings at full working precision so a hit is bit-identical to a
fresh evaluation.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from decimal import Decimal
from pathlib import Path

from .precision import from_string, to_string
from .sums import SumTerm, parse_term

ENV_VAR = "ZETAFORGE_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "zetaforge"


class SumCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def _path(self, term: SumTerm, digits: int, K: int) -> Path:
        key = f"{term}|{digits}|{K}"
        name = hashlib.sha256(key.encode()).hexdigest()[:24]
        return self.directory / f"{name}.json"

    def get(self, term: SumTerm, digits: int, K: int) -> Decimal | None:
        path = self._path(term, digits, K)
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, ValueError):
            return None
        # Guard against hash collisions and hand-edited files.
        if doc.get("term") != str(term) or doc.get("digits") != digits \
                or doc.get("truncation_k") != K:
            return None
        return from_string(doc["value"])

    def put(self, term: SumTerm, digits: int, K: int, value: Decimal) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(term, digits, K)
        doc = {"term": str(term), "digits": digits, "truncation_k": K,
               "value": to_string(value)}
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def entries(self) -> list[dict]:
        """Metadata of every cached evaluation, sorted by term then digits."""
        out = []
        if not self.directory.is_dir():
            return out
        for path in self.directory.glob("*.json"):
            if path.name.startswith(".tmp-"):
                continue
            try:
                with open(path, encoding="utf-8") as fh:
                    doc = json.load(fh)
                parse_term(doc["term"])
            except (OSError, ValueError, KeyError):
                continue
            out.append({"term": doc["term"], "digits": doc["digits"],
                        "truncation_k": doc["truncation_k"], "file": path.name})
        out.sort(key=lambda e: (e["term"], e["digits"], e["truncation_k"]))
        return out

    def clear(self) -> int:
        removed = 0
        if not self.directory.is_dir():
            return removed
        for path in self.directory.glob("*.json"):
            path.unlink()
            removed += 1
        return removed
