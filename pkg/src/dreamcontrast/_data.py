from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path


def data_path(name: str) -> Path:
    return Path(str(resources.files("dreamcontrast") / "data" / name))


def read_lines(path: str | Path) -> list[str]:
    """Non-empty, non-comment lines of a bundled or user text file."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            out.append(line)
    return out


@lru_cache(maxsize=None)
def bundled_wordset(name: str) -> frozenset[str]:
    return frozenset(w.strip().lower() for w in read_lines(data_path(name)))
