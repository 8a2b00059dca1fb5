"""Polygon file formats: JSON {"vertices": [[x, y], ...]} or two-column CSV.

Parsing is format-sniffing (JSON documents start with '{'), strict about
finiteness, and reports the offending line or element on failure.  Floats
are written with shortest round-trip representation so a written file
re-parses to the identical vertex list.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import PolygonFileError
from .geometry import ConvexPolygon, make_polygon


def parse_polygon_text(text: str, source: str = "<string>") -> ConvexPolygon:
    stripped = text.lstrip()
    if not stripped:
        raise PolygonFileError(f"{source}: empty polygon file")
    if stripped.startswith("{"):
        points = _parse_json(stripped, source)
    else:
        points = _parse_csv(text, source)
    if len(points) < 3:
        raise PolygonFileError(f"{source}: need at least 3 points, got {len(points)}")
    return make_polygon(points)


def load_polygon(path) -> ConvexPolygon:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise PolygonFileError(f"{path}: {e}") from e
    return parse_polygon_text(text, str(path))


def _parse_json(text: str, source: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise PolygonFileError(f"{source}: invalid JSON at line {e.lineno}: {e.msg}") from e
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise PolygonFileError(f'{source}: JSON document must have a "vertices" key')
    verts = doc["vertices"]
    if not isinstance(verts, list):
        raise PolygonFileError(f'{source}: "vertices" must be a list')
    points = []
    for i, row in enumerate(verts):
        if (not isinstance(row, (list, tuple))) or len(row) != 2:
            raise PolygonFileError(f"{source}: vertices[{i}] is not an [x, y] pair")
        try:
            x, y = float(row[0]), float(row[1])
        except (TypeError, ValueError) as e:
            raise PolygonFileError(f"{source}: vertices[{i}] has a non-numeric entry") from e
        if not (math.isfinite(x) and math.isfinite(y)):
            raise PolygonFileError(f"{source}: vertices[{i}] is not finite")
        points.append((x, y))
    return points


def _parse_csv(text: str, source: str):
    points = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row if c.strip()]
        if not cells:
            continue
        if len(cells) != 2:
            raise PolygonFileError(f"{source}:{lineno}: expected two columns, got {len(cells)}")
        try:
            x, y = float(cells[0]), float(cells[1])
        except ValueError:
            if lineno == 1:
                continue  # header row
            raise PolygonFileError(f"{source}:{lineno}: non-numeric cell") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise PolygonFileError(f"{source}:{lineno}: non-finite coordinate")
        points.append((x, y))
    return points


def polygon_to_json(P: ConvexPolygon) -> str:
    rows = ",\n    ".join(f"[{x!r}, {y!r}]" for x, y in P.vertices)
    return '{\n  "vertices": [\n    ' + rows + "\n  ]\n}\n"


def polygon_to_csv(P: ConvexPolygon) -> str:
    lines = ["x,y"] + [f"{x!r},{y!r}" for x, y in P.vertices]
    return "\n".join(lines) + "\n"


def save_polygon(path, P: ConvexPolygon) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(polygon_to_csv(P))
    else:
        path.write_text(polygon_to_json(P))
