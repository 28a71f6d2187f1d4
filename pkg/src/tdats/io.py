"""Delimited-text readers and writers for series, clouds, diagrams and tables."""

from __future__ import annotations

import json
import os
import sys

import numpy as np

from .diagram import PersistenceDiagram
from .errors import InputError, MissingInputError


def _split(line: str) -> list[str]:
    if "," in line:
        return [c.strip() for c in line.split(",")]
    return line.split()


def read_table(path: str) -> tuple[list[str] | None, np.ndarray]:
    """Numeric table from comma- or whitespace-delimited text.

    A first row that does not parse as numbers is taken as a header. Blank lines
    and lines starting with ``#`` are skipped.
    """
    if path != "-" and not os.path.exists(path):
        raise MissingInputError(f"input file not found: {path}")
    fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
    try:
        lines = [ln.strip() for ln in fh]
    finally:
        if fh is not sys.stdin:
            fh.close()
    header, rows = None, []
    for lineno, line in enumerate(lines, 1):
        if not line or line.startswith("#"):
            continue
        cells = _split(line)
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            if header is None and not rows:
                header = cells
                continue
            raise InputError(f"{path}:{lineno}: non-numeric value in {line!r}") from None
    if not rows:
        raise InputError(f"{path}: no numeric rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError(f"{path}: rows have differing numbers of columns")
    return header, np.array(rows, dtype=float)


def read_diagram(path: str) -> PersistenceDiagram:
    """Three-column ``(dim, birth, death)`` table; the largest death stands in for
    the cap unless a ``# maxscale=`` comment is present."""
    header, arr = read_table(path)
    if arr.shape[1] != 3:
        raise InputError(f"{path}: diagram files need exactly three columns")
    maxscale = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("# maxscale="):
                maxscale = float(line.split("=", 1)[1])
    if maxscale is None:
        maxscale = float(arr[:, 2].max())
    return PersistenceDiagram.from_rows(arr, maxscale)


def fmt(value) -> str:
    """Shortest round-tripping text for a number."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def table_text(header: list[str], rows, int_cols=()) -> str:
    out = [",".join(header)]
    for row in rows:
        cells = [str(int(v)) if i in int_cols else fmt(v) for i, v in enumerate(row)]
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def diagram_text(dg: PersistenceDiagram) -> str:
    rows = dg.as_array()
    body = table_text(["dim", "birth", "death"], rows, int_cols=(0,))
    return f"# maxscale={fmt(dg.maxscale)}\n" + body


def json_text(header: list[str], rows, extra: dict | None = None) -> str:
    doc = {"columns": list(header),
           "rows": [[v.item() if hasattr(v, "item") else v for v in r] for r in rows]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True) + "\n"


def write_text(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
