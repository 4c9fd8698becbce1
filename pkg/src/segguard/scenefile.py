"""JSON scene files and guard reports."""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Optional

from .geom import Point, Segment
from .oracle import Scene
from .polygon import validate
from .slicer import BlockerResult, GuardSet
from .visibility import check_segment_inside


class SceneFormatError(ValueError):
    pass


def num(x: float) -> float:
    """Round to 9 significant digits for stable, diff-friendly output."""
    return float(f"{x:.9g}")


def pt(p) -> list[float]:
    return [num(p[0]), num(p[1])]


def _pair(raw, key: str) -> tuple:
    if not isinstance(raw, list) or len(raw) != 2:
        raise SceneFormatError(f"'{key}' must be two [x, y] pairs")
    return tuple(_xy(p, key) for p in raw)


def _xy(p, key: str) -> tuple[float, float]:
    if not isinstance(p, (list, tuple)) or len(p) != 2:
        raise SceneFormatError(f"bad point in '{key}': {p!r}")
    try:
        return float(p[0]), float(p[1])
    except (TypeError, ValueError) as e:
        raise SceneFormatError(f"bad coordinate in '{key}': {p!r}") from e


def scene_from_dict(d: dict) -> Scene:
    if not isinstance(d, dict):
        raise SceneFormatError("scene file must hold a JSON object")
    for key in ("polygon", "source", "target"):
        if key not in d:
            raise SceneFormatError(f"missing key '{key}'")
    if not isinstance(d["polygon"], list):
        raise SceneFormatError("'polygon' must be a list of [x, y] pairs")
    P = validate([_xy(p, "polygon") for p in d["polygon"]])
    s = Segment(*_pair(d["source"], "source"))
    t = Segment(*_pair(d["target"], "target"))
    check_segment_inside(P, s)
    check_segment_inside(P, t)
    return Scene(P, s, t, name=d.get("name"))


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SceneFormatError(str(e)) from e


def load_scene(path) -> Scene:
    return scene_from_dict(read_json(path))


def load_polygon(path):
    """Polygon from a scene file, a ``{"polygon": ...}`` object or a bare point list."""
    d = read_json(path)
    raw = d.get("polygon") if isinstance(d, dict) else d
    if not isinstance(raw, list):
        raise SceneFormatError("no polygon found")
    return validate([_xy(p, "polygon") for p in raw])


def scene_to_dict(sc: Scene) -> dict:
    d: dict = {}
    if sc.name:
        d["name"] = sc.name
    d["polygon"] = [pt(v) for v in sc.polygon.vertices]
    d["source"] = [pt(sc.source.a), pt(sc.source.b)]
    d["target"] = [pt(sc.target.a), pt(sc.target.b)]
    return d


_PAIR = re.compile(r"\[\s+(-?[\d.eE+-]+),\s+(-?[\d.eE+-]+)\s+\]")


def dumps(obj) -> str:
    """Indented JSON with each coordinate pair kept on one line."""
    return _PAIR.sub(r"[\1, \2]", json.dumps(obj, indent=2)) + "\n"


def save_scene(sc: Scene, path) -> None:
    Path(path).write_text(dumps(scene_to_dict(sc)))


def _blocker(b: Optional[BlockerResult]) -> Optional[dict]:
    if b is None:
        return None
    return {
        "anchor": pt(b.anchor),
        "vertex": pt(b.vertex) if b.vertex is not None else None,
        "tPoint": pt(b.t_point) if b.t_point is not None else None,
    }


def _opt(p: Optional[Point]):
    return pt(p) if p is not None else None


def guard_report(gs: GuardSet, *, trace: bool = False, covered: Optional[float] = None) -> dict:
    out: dict = {
        "guards": [pt(g) for g in gs.guards],
        "count": len(gs.guards),
        "iterations": gs.iterations,
        "ar": num(gs.ar),
        "bound": gs.bound,
        "reason": gs.reason.value,
    }
    if covered is not None:
        out["coveredFraction"] = covered
    if trace:
        out["trace"] = [
            {
                "index": r.index,
                "xPoint": pt(r.x_point),
                "yPoint": pt(r.y_point),
                "lbvX": _blocker(r.lbv_x),
                "rbvY": _blocker(r.rbv_y),
                "rbvX": _blocker(r.rbv_x),
                "lbvY": _blocker(r.lbv_y),
                "tX": _opt(r.t_x),
                "tY": _opt(r.t_y),
                "backX": _blocker(r.back_x),
                "backY": _blocker(r.back_y),
                "nextX": _opt(r.next_x),
                "nextY": _opt(r.next_y),
                "identityX": r.identity_x,
                "identityY": r.identity_y,
            }
            for r in gs.trace
        ]
    return out
