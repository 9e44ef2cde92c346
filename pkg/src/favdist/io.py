"""JSON point-set files: ``{"points": [[x, y, z], ...], "radii": [...], "meta": {...}}``.

Radii are optional; readers fall back to the mode oracle when they are absent.
Numbers are written with 17 significant digits so coordinates round-trip.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .core import PointSet3


class PointSetFileError(ValueError):
    pass


def _num(x: float) -> str:
    return format(float(x), ".17g")


def dumps(points, radii=None, meta: dict[str, Any] | None = None) -> str:
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    rows = ",\n    ".join("[" + ", ".join(_num(v) for v in p) + "]" for p in pts)
    parts = [f'  "points": [\n    {rows}\n  ]' if len(pts) else '  "points": []']
    if radii is not None:
        parts.append('  "radii": [' + ", ".join(_num(r) for r in np.asarray(radii, dtype=float)) + "]")
    if meta:
        parts.append('  "meta": ' + json.dumps(meta, sort_keys=True, default=_json_default))
    return "{\n" + ",\n".join(parts) + "\n}\n"


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_point_set(path, ps: PointSet3, include_radii: bool = True) -> None:
    Path(path).write_text(dumps(ps.points, ps.radii if include_radii else None, ps.meta))


def loads(text: str) -> tuple[np.ndarray, np.ndarray | None, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PointSetFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "points" not in doc:
        raise PointSetFileError('expected an object with a "points" array')
    try:
        pts = np.array(doc["points"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise PointSetFileError(f"bad points array: {exc}") from exc
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise PointSetFileError("points must be an array of [x, y, z] triples")
    radii = doc.get("radii")
    if radii is not None:
        try:
            radii = np.array(radii, dtype=float)
        except (TypeError, ValueError) as exc:
            raise PointSetFileError(f"bad radii array: {exc}") from exc
        if radii.shape != (len(pts),):
            raise PointSetFileError(f"{len(pts)} points but radii has shape {radii.shape}")
        if np.any(radii <= 0):
            raise PointSetFileError("radii must be positive")
    if not (np.all(np.isfinite(pts)) and (radii is None or np.all(np.isfinite(radii)))):
        raise PointSetFileError("non-finite number in file")
    meta = doc.get("meta") or {}
    if not isinstance(meta, dict):
        raise PointSetFileError('"meta" must be an object')
    return pts, radii, meta


def read_point_set(path) -> tuple[np.ndarray, np.ndarray | None, dict]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PointSetFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)
