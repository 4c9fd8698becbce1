"""Planar primitives and exact orientation predicates.

Predicates (``orient`` and everything derived from it) are adaptively exact:
a floating-point determinant is accepted when it clears a forward error
bound, otherwise the determinant is recomputed with rationals. Constructed
points (intersections) are ordinary floats compared with ``EPS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import NamedTuple, Optional, Union

EPS = 1e-9

# Forward error bound for the 2x2 orientation determinant (Shewchuk's A bound).
_CCW_ERRBOUND = 3.3306690738754716e-16


class GeometryError(ValueError):
    pass


class NonFiniteCoordinate(GeometryError):
    pass


class DegenerateSegment(GeometryError):
    pass


class CollinearOverlap(GeometryError):
    """The query line contains the whole segment."""


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise NonFiniteCoordinate(f"non-finite coordinate in {p!r}")
    return Point(x, y)


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        object.__setattr__(self, "a", as_point(self.a))
        object.__setattr__(self, "b", as_point(self.b))
        if self.a == self.b:
            raise DegenerateSegment(f"zero-length segment at {self.a}")

    def __iter__(self):
        yield self.a
        yield self.b

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)

    @property
    def midpoint(self) -> Point:
        return Point(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))

    def at(self, s: float) -> Point:
        """Point at parameter ``s`` (0 at ``a``, 1 at ``b``)."""
        if s == 0.0:
            return self.a
        if s == 1.0:
            return self.b
        return Point(self.a.x + s * (self.b.x - self.a.x), self.a.y + s * (self.b.y - self.a.y))

    def param(self, p) -> float:
        """Parameter of the orthogonal projection of ``p`` onto the supporting line."""
        dx, dy = self.b.x - self.a.x, self.b.y - self.a.y
        return ((p[0] - self.a.x) * dx + (p[1] - self.a.y) * dy) / (dx * dx + dy * dy)

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)


class Orientation(IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


CW = Orientation.CLOCKWISE
CCW = Orientation.COUNTERCLOCKWISE
COLLINEAR = Orientation.COLLINEAR


def orient(p, q, r) -> Orientation:
    """Sign of the signed area of triangle ``pqr``; exact for float inputs."""
    detleft = (q[0] - p[0]) * (r[1] - p[1])
    detright = (q[1] - p[1]) * (r[0] - p[0])
    det = detleft - detright
    bound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return CCW
    if -det > bound:
        return CW
    return _orient_exact(p, q, r)


def _orient_exact(p, q, r) -> Orientation:
    for c in (p[0], p[1], q[0], q[1], r[0], r[1]):
        if not math.isfinite(c):
            raise NonFiniteCoordinate("orient() received a non-finite coordinate")
    px, py = Fraction(p[0]), Fraction(p[1])
    det = (Fraction(q[0]) - px) * (Fraction(r[1]) - py) - (Fraction(q[1]) - py) * (Fraction(r[0]) - px)
    if det > 0:
        return CCW
    if det < 0:
        return CW
    return COLLINEAR


def cross(o, a, b) -> float:
    """Plain float cross product (a - o) x (b - o); not exact."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def dist(p, q) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def line_distance(a, b, p) -> float:
    """Unsigned distance from ``p`` to the line through ``a`` and ``b``."""
    return abs(cross(a, b, p)) / dist(a, b)


def segment_distance(a, b, p) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    s = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2
    s = min(1.0, max(0.0, s))
    return math.hypot(p[0] - (a[0] + s * dx), p[1] - (a[1] + s * dy))


def on_segment(a, b, p) -> bool:
    """Exact test: ``p`` lies on the closed segment ``ab``."""
    if orient(a, b, p) != COLLINEAR:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


class Overlap(NamedTuple):
    """Collinear overlap of two segments, as the shared sub-segment."""

    a: Point
    b: Point


def _line_intersection(p1, p2, p3, p4) -> Point:
    d = (p2[0] - p1[0]) * (p4[1] - p3[1]) - (p2[1] - p1[1]) * (p4[0] - p3[0])
    t = ((p3[0] - p1[0]) * (p4[1] - p3[1]) - (p3[1] - p1[1]) * (p4[0] - p3[0])) / d
    return Point(p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))


def segment_intersection(s1: Segment, s2: Segment) -> Union[None, Point, Overlap]:
    """Intersection of two closed segments.

    Returns ``None``, the single shared point, or an :class:`Overlap` when the
    segments are collinear and share more than one point. The result does not
    depend on argument order.
    """
    a, b = s1.a, s1.b
    c, d = s2.a, s2.b
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)

    if o1 == o2 == COLLINEAR:
        # project on the dominant axis; endpoints are exact, so the overlap is too
        axis = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
        lo1, hi1 = sorted((a, b), key=lambda p: (p[axis], p[1 - axis]))
        lo2, hi2 = sorted((c, d), key=lambda p: (p[axis], p[1 - axis]))
        key = lambda p: (p[axis], p[1 - axis])  # noqa: E731
        lo = max(lo1, lo2, key=key)
        hi = min(hi1, hi2, key=key)
        if key(lo) > key(hi):
            return None
        if lo == hi:
            return lo
        return Overlap(lo, hi)

    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    # touching cases return the exact input point
    if o1 == COLLINEAR:
        return c
    if o2 == COLLINEAR:
        return d
    if o3 == COLLINEAR:
        return a
    if o4 == COLLINEAR:
        return b
    # canonical argument order keeps the constructed point symmetric
    if (a, b) > (c, d):
        a, b, c, d = c, d, a, b
    return _line_intersection(a, b, c, d)


def line_cross_segment(p, q, s: Segment) -> Optional[Point]:
    """Intersection of the infinite line through ``p`` and ``q`` with segment ``s``.

    Raises :class:`CollinearOverlap` when the line contains ``s``.
    """
    if p == q:
        raise DegenerateSegment("line_cross_segment needs two distinct points")
    oa, ob = orient(p, q, s.a), orient(p, q, s.b)
    if oa == COLLINEAR and ob == COLLINEAR:
        raise CollinearOverlap(f"line through {p}, {q} contains {s}")
    if oa == COLLINEAR:
        return s.a
    if ob == COLLINEAR:
        return s.b
    if oa == ob:
        return None
    ca, cb = cross(p, q, s.a), cross(p, q, s.b)
    t = ca / (ca - cb)
    t = min(1.0, max(0.0, t))
    return s.at(t)


def ray_hits_segment(origin, direction, e0, e1) -> Optional[float]:
    """Distance factor ``t > 0`` where ``origin + t*direction`` meets segment
    ``e0e1`` (float arithmetic), or ``None``."""
    dx, dy = direction
    ex, ey = e1[0] - e0[0], e1[1] - e0[1]
    den = dx * ey - dy * ex
    if den == 0.0:
        return None
    wx, wy = e0[0] - origin[0], e0[1] - origin[1]
    t = (wx * ey - wy * ex) / den
    u = (wx * dy - wy * dx) / den
    if t <= 0.0 or u < 0.0 or u > 1.0:
        return None
    return t
