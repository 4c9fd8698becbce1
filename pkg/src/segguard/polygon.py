"""Validated simple polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .geom import (
    CCW,
    COLLINEAR,
    CW,
    EPS,
    GeometryError,
    Overlap,
    Point,
    Segment,
    as_point,
    orient,
    segment_distance,
    segment_intersection,
)


class PolygonError(GeometryError):
    pass


class TooFewVertices(PolygonError):
    pass


class DuplicateVertex(PolygonError):
    pass


class SelfIntersecting(PolygonError):
    def __init__(self, i: int, j: int, where=None):
        self.edges = (i, j)
        self.where = where
        super().__init__(f"edges {i} and {j} intersect at {where}")


class PointLocation(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True, eq=False)
class Polygon:
    """Counter-clockwise simple polygon.

    Build instances with :func:`validate`; the constructor trusts its input.
    ``collinear`` lists indices of straight (angle == pi) vertices, which are
    kept but classified convex.
    """

    vertices: tuple[Point, ...]
    reflex: tuple[bool, ...]
    collinear: tuple[int, ...] = field(default=())

    @classmethod
    def trusted(cls, vertices: Iterable) -> "Polygon":
        vs = tuple(as_point(v) for v in vertices)
        n = len(vs)
        reflex = tuple(orient(vs[i - 1], vs[i], vs[(i + 1) % n]) == CW for i in range(n))
        straight = tuple(i for i in range(n) if orient(vs[i - 1], vs[i], vs[(i + 1) % n]) == COLLINEAR)
        return cls(vs, reflex, straight)

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def prev(self, i: int) -> Point:
        return self.vertices[i - 1]

    def next(self, i: int) -> Point:
        return self.vertices[(i + 1) % len(self.vertices)]

    def edge(self, i: int) -> tuple[Point, Point]:
        return self.vertices[i], self.vertices[(i + 1) % len(self.vertices)]

    def edges(self) -> list[tuple[Point, Point]]:
        return [self.edge(i) for i in range(len(self.vertices))]

    @cached_property
    def reflex_indices(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.reflex) if r)

    @property
    def reflex_vertices(self) -> list[Point]:
        return [self.vertices[i] for i in self.reflex_indices]

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @cached_property
    def coords_next(self) -> np.ndarray:
        """``coords`` shifted by one: row ``i`` is the far end of edge ``i``."""
        return np.roll(self.coords, -1, axis=0)

    @cached_property
    def area(self) -> float:
        c = self.coords
        x, y = c[:, 0], c[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        c = self.coords
        return float(c[:, 0].min()), float(c[:, 1].min()), float(c[:, 0].max()), float(c[:, 1].max())

    def transformed(self, fn) -> "Polygon":
        """Apply a point map; orientation is re-normalised."""
        return validate([fn(v) for v in self.vertices])


def signed_area(points: Sequence) -> float:
    s = 0.0
    n = len(points)
    for i in range(n):
        x0, y0 = points[i]
        x1, y1 = points[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def validate(raw: Sequence) -> Polygon:
    """Check simplicity and return a CCW :class:`Polygon`."""
    pts = [as_point(p) for p in raw]
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts = pts[:-1]  # tolerate an explicitly closed ring
    if len(pts) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(pts)}")
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise DuplicateVertex(f"vertex {p} repeated at positions {seen[p]} and {i}")
        seen[p] = i

    n = len(pts)
    segs = [Segment(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            hit = segment_intersection(segs[i], segs[j])
            if hit is None:
                continue
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent and not isinstance(hit, Overlap):
                continue  # the shared vertex
            raise SelfIntersecting(i, j, hit)

    if signed_area(pts) < 0:
        pts.reverse()
    elif signed_area(pts) == 0:
        raise SelfIntersecting(0, 0, "zero area")
    return Polygon.trusted(pts)


def locate(P: Polygon, p) -> PointLocation:
    """Even-odd classification; anything within ``EPS`` of an edge is boundary."""
    px, py = p[0], p[1]
    inside = False
    vs = P.vertices
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        if segment_distance(a, b, p) <= EPS:
            return PointLocation.BOUNDARY
        if (a.y > py) != (b.y > py):
            xc = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y)
            if xc > px:
                inside = not inside
    return PointLocation.INTERIOR if inside else PointLocation.EXTERIOR


def locate_many(P: Polygon, pts: np.ndarray) -> np.ndarray:
    """Vectorised :func:`locate`; returns codes 1 interior, 0 boundary, -1 exterior."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    a, b = P.coords, P.coords_next
    px, py = pts[:, 0:1], pts[:, 1:2]
    ax, ay, bx, by = a[:, 0], a[:, 1], b[:, 0], b[:, 1]
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    s = np.clip(((px - ax) * dx + (py - ay) * dy) / L2, 0.0, 1.0)
    d = np.hypot(px - (ax + s * dx), py - (ay + s * dy))
    on_edge = (d <= EPS).any(axis=1)
    straddle = (ay > py) != (by > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = ax + (py - ay) * dx / dy
    crossings = (straddle & (xc > px)).sum(axis=1)
    out = np.where(crossings % 2 == 1, 1, -1)
    out[on_edge] = 0
    return out


def convex_hull(P: Polygon | Sequence) -> Polygon:
    """Convex hull of the vertex set, CCW, without collinear hull vertices."""
    pts = P.vertices if isinstance(P, Polygon) else [as_point(p) for p in P]
    pts = sorted(set(pts))
    if len(pts) < 3:
        raise TooFewVertices("hull of fewer than 3 distinct points")

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) != CCW:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise TooFewVertices("all vertices are collinear")
    return Polygon.trusted(hull)


def turning_angle_sum(P: Polygon) -> float:
    total = 0.0
    vs = P.vertices
    n = len(vs)
    for i in range(n):
        a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
        h1 = math.atan2(b.y - a.y, b.x - a.x)
        h2 = math.atan2(c.y - b.y, c.x - b.x)
        d = h2 - h1
        while d <= -math.pi:
            d += 2 * math.pi
        while d > math.pi:
            d -= 2 * math.pi
        total += d
    return total
