"""Matrix file formats: positional CSV and labeled JSON.

CSV carries values only; JSON is an object with a required ``matrix`` field
plus optional ``labels`` and string-valued ``metadata``. Serialization
prints floats with ``repr``, whose shortest round-trip form (at most 17
significant digits) makes parse(serialize(doc)) reproduce the values bit
for bit. Matrix-level validation (positivity, reciprocity) is deferred to
``new_pc_matrix``; parsing only enforces document shape.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParseError

FORMATS = ("csv", "json")


@dataclass(frozen=True, eq=False)
class MatrixDocument:
    """Raw matrix values with optional entity labels and metadata."""

    matrix: np.ndarray
    labels: list[str] | None = None
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"document matrix must be square, got shape {m.shape}")
        if self.labels is not None:
            if len(self.labels) != m.shape[0]:
                raise DimensionError(
                    f"{len(self.labels)} labels for a {m.shape[0]}x{m.shape[1]} matrix"
                )
            if len(set(self.labels)) != len(self.labels):
                raise DimensionError("labels must be unique")

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])


def _document(rows: list[list[float]], labels=None, metadata=None) -> MatrixDocument:
    arr = np.asarray(rows, dtype=float)
    arr.flags.writeable = False
    return MatrixDocument(matrix=arr, labels=labels, metadata=dict(metadata or {}))


def _parse_csv(text: str) -> MatrixDocument:
    rows: list[list[float]] = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cells = line.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ParseError(
                f"row has {len(cells)} cells, expected {width}", line=lineno
            )
        row = []
        for col, cell in enumerate(cells, start=1):
            try:
                row.append(float(cell))
            except ValueError:
                raise ParseError(f"not a number: {cell.strip()!r}", line=lineno, column=col) from None
        rows.append(row)
    if not rows:
        raise ParseError("empty input")
    if len(rows) != width:
        raise DimensionError(f"{len(rows)} rows of {width} columns is not square")
    return _document(rows)


def _parse_json(text: str) -> MatrixDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict) or "matrix" not in data:
        raise ParseError('expected a JSON object with a "matrix" field')
    matrix = data["matrix"]
    if not isinstance(matrix, list) or not matrix or not all(isinstance(r, list) for r in matrix):
        raise ParseError('"matrix" must be a non-empty list of rows')
    width = len(matrix[0])
    rows = []
    for rowno, row in enumerate(matrix, start=1):
        if len(row) != width:
            raise ParseError(f'"matrix" row {rowno} has {len(row)} cells, expected {width}')
        parsed = []
        for colno, cell in enumerate(row, start=1):
            if isinstance(cell, bool) or not isinstance(cell, (int, float)):
                raise ParseError(f'"matrix" row {rowno}, cell {colno} is not a number: {cell!r}')
            parsed.append(float(cell))
        rows.append(parsed)
    if len(rows) != width:
        raise DimensionError(f"{len(rows)} rows of {width} columns is not square")

    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise ParseError('"labels" must be a list of strings')
    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in metadata.items()
    ):
        raise ParseError('"metadata" must be an object with string values')
    return _document(rows, labels=labels, metadata=metadata)


def parse(text: str, format: str = "csv") -> MatrixDocument:
    """Parse CSV or JSON text into a document; raises ParseError (with line
    and column where known) or DimensionError."""
    if format == "csv":
        return _parse_csv(text)
    if format == "json":
        return _parse_json(text)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def serialize(doc: MatrixDocument, format: str = "csv") -> str:
    """Render a document; values round-trip bit-exactly through parse."""
    if format == "csv":
        return "\n".join(",".join(repr(v) for v in row) for row in doc.matrix.tolist()) + "\n"
    if format == "json":
        payload: dict = {"matrix": doc.matrix.tolist()}
        if doc.labels is not None:
            payload["labels"] = doc.labels
        if doc.metadata:
            payload["metadata"] = doc.metadata
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
