"""TSV report writing.

Each report starts with ``#`` header lines (toolkit version, config hash,
seed and stage-specific notes), then a column line and the rows.  Files are
written to a temporary name and renamed, so an interrupted stage never
leaves a half-written report behind.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def write_report(path: Path, header: dict, columns: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# dreamcontrast {__version__}\n")
        for k, v in header.items():
            fh.write(f"# {k}: {v}\n")
        fh.write("\t".join(columns) + "\n")
        for row in rows:
            fh.write("\t".join(fmt(v) for v in row) + "\n")
    os.replace(tmp, path)
    return path


def read_body(path: Path) -> str:
    """Report content without its ``#`` header lines."""
    with open(path, encoding="utf-8") as fh:
        return "".join(line for line in fh if not line.startswith("#"))
