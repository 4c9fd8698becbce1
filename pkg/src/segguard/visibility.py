"""Point and segment visibility inside a simple polygon.

Visibility uses grazing closure: the open sight segment must stay in the
polygon interior, except that it may touch the boundary at isolated vertices
where both sight directions point into the interior angle (reflex grazing).
Contacts are detected within ``EPS`` of the sight line; everything else uses
exact orientation predicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

import numpy as np

from .geom import (
    CCW,
    COLLINEAR,
    EPS,
    CollinearOverlap,
    GeometryError,
    Point,
    Segment,
    as_point,
    cross,
    line_cross_segment,
    orient,
    segment_distance,
)
from .polygon import Polygon, PointLocation, convex_hull, locate, locate_many

_ERR = 3.3306690738754716e-16
_ANGLE_MERGE = 1e-12


class QueryOutsidePolygon(GeometryError):
    pass


class SegmentOutsidePolygon(GeometryError):
    pass


def inside_wedge(P: Polygon, i: int, x) -> bool:
    """Whether the direction from vertex ``i`` towards ``x`` lies strictly
    inside the interior angle at that vertex."""
    vs = P.vertices
    w = vs[i]
    o1 = orient(vs[i - 1], w, x)
    o2 = orient(w, vs[(i + 1) % len(vs)], x)
    if P.reflex[i]:
        return o1 == CCW or o2 == CCW
    return o1 == CCW and o2 == CCW


def sees(P: Polygon, a, b) -> bool:
    """Grazing-closure visibility between two points of the closed polygon."""
    a, b = as_point(a), as_point(b)
    dx, dy = b.x - a.x, b.y - a.y
    L = math.hypot(dx, dy)
    if L <= EPS:
        return True
    vs = P.vertices
    n = len(vs)
    skip = [False] * n
    contacts = []
    for i, w in enumerate(vs):
        d = (dx * (w.y - a.y) - dy * (w.x - a.x)) / L
        if abs(d) > EPS:
            continue
        s = ((w.x - a.x) * dx + (w.y - a.y) * dy) / (L * L)
        if s <= 0.0 or s >= 1.0:
            continue
        if math.hypot(w.x - a.x, w.y - a.y) <= EPS or math.hypot(w.x - b.x, w.y - b.y) <= EPS:
            continue
        if not (inside_wedge(P, i, a) and inside_wedge(P, i, b)):
            return False
        skip[i] = skip[i - 1] = True
        contacts.append(s)

    for i in range(n):
        if skip[i]:
            continue
        e0, e1 = vs[i], vs[(i + 1) % n]
        o1, o2 = orient(a, b, e0), orient(a, b, e1)
        if o1 == COLLINEAR or o2 == COLLINEAR or o1 == o2:
            continue
        o3, o4 = orient(e0, e1, a), orient(e0, e1, b)
        if o3 == COLLINEAR or o4 == COLLINEAR or o3 == o4:
            continue
        ca, cb = cross(e0, e1, a), cross(e0, e1, b)
        t = ca / (ca - cb)
        if t * L <= EPS or (1.0 - t) * L <= EPS:
            continue
        return False

    params = sorted(contacts)
    params = [0.0] + params + [1.0]
    k = max(range(len(params) - 1), key=lambda j: params[j + 1] - params[j])
    m = 0.5 * (params[k] + params[k + 1])
    return locate(P, (a.x + m * dx, a.y + m * dy)) == PointLocation.INTERIOR


def _sign_with_doubt(left: np.ndarray, right: np.ndarray):
    det = left - right
    doubt = np.abs(det) <= _ERR * (np.abs(left) + np.abs(right))
    return np.sign(det), doubt


def sees_many(P: Polygon, a, pts) -> np.ndarray:
    """Vectorised :func:`sees` from a fixed point ``a`` to many points.

    Float orientation signs are used where they are provably correct; rows
    with an uncertain sign or with boundary contacts are re-evaluated by the
    exact scalar routine, so the result matches :func:`sees` row for row.
    """
    a = as_point(a)
    B = np.asarray(pts, dtype=float).reshape(-1, 2)
    m = len(B)
    if m == 0:
        return np.zeros(0, dtype=bool)
    W = P.coords
    Wn = P.coords_next
    ax, ay = a.x, a.y
    bx, by = B[:, 0:1], B[:, 1:2]
    dx, dy = bx - ax, by - ay
    L = np.hypot(dx, dy)
    wx, wy = W[:, 0], W[:, 1]

    with np.errstate(divide="ignore", invalid="ignore"):
        d = (dx * (wy - ay) - dy * (wx - ax)) / L
        s = ((wx - ax) * dx + (wy - ay) * dy) / (L * L)
    near_a = np.hypot(wx - ax, wy - ay) <= EPS
    near_b = np.hypot(wx - bx, wy - by) <= EPS
    contact = (np.abs(d) <= EPS) & (s > 0.0) & (s < 1.0) & ~near_a & ~near_b

    # proper crossings, edge i = (W[i], W[i+1])
    l1 = dx * (wy - ay)
    r1 = dy * (wx - ax)
    o_ab_w, dbt1 = _sign_with_doubt(l1, r1)
    o_ab_wn = np.roll(o_ab_w, -1, axis=1)
    dbt1n = np.roll(dbt1, -1, axis=1)
    ex, ey = Wn[:, 0] - wx, Wn[:, 1] - wy
    o3, dbt3 = _sign_with_doubt(ex * (ay - wy), ey * (ax - wx))
    o4, dbt4 = _sign_with_doubt(ex * (by - wy), ey * (bx - wx))
    ca = ex * (ay - wy) - ey * (ax - wx)
    cb = ex * (by - wy) - ey * (bx - wx)
    with np.errstate(divide="ignore", invalid="ignore"):
        tcross = ca / (ca - cb)
    proper = (o_ab_w * o_ab_wn < 0) & (o3 * o4 < 0)
    proper &= (tcross * L > EPS) & ((1.0 - tcross) * L > EPS)
    skip = contact | np.roll(contact, -1, axis=1)
    blocked = (proper & ~skip).any(axis=1)
    doubtful = (dbt1 | dbt1n | dbt3[None, :] | dbt4).any(axis=1)

    mid = np.column_stack([0.5 * (ax + B[:, 0]), 0.5 * (ay + B[:, 1])])
    inside = locate_many(P, mid) == 1
    result = ~blocked & inside
    result[L[:, 0] <= EPS] = True

    redo = (contact.any(axis=1) | doubtful) & (L[:, 0] > EPS)
    for k in np.nonzero(redo)[0]:
        result[k] = sees(P, a, B[k])
    return result


@dataclass(frozen=True)
class VisibilityPolygon:
    apex: Point
    region: Polygon
    fan: tuple[tuple[Point, Point], ...]

    @property
    def area(self) -> float:
        q = self.apex
        return 0.5 * sum(cross(q, A, B) for A, B in self.fan)


def _boundary_feature(P: Polygon, q: Point):
    """('vertex', i), ('edge', i) or None for an interior point."""
    vs = P.vertices
    for i, w in enumerate(vs):
        if math.hypot(w.x - q.x, w.y - q.y) <= EPS:
            return ("vertex", i)
    for i in range(len(vs)):
        a, b = P.edge(i)
        if segment_distance(a, b, q) <= EPS:
            return ("edge", i)
    return None


def _direction_enters(P: Polygon, feature, q: Point, d) -> bool:
    if feature is None:
        return True
    kind, i = feature
    if kind == "vertex":
        w = P.vertices[i]
        return inside_wedge(P, i, (w.x + d[0], w.y + d[1]))
    a, b = P.edge(i)
    return orient(a, b, (q.x + d[0], q.y + d[1])) == CCW


def visibility_polygon(P: Polygon, q) -> VisibilityPolygon:
    """Visibility polygon of ``q`` by an angular sweep over vertex directions.

    Between two consecutive vertex directions the nearest edge does not
    change, so each angular sector contributes one triangle of the fan.
    """
    q = as_point(q)
    if locate(P, q) == PointLocation.EXTERIOR:
        raise QueryOutsidePolygon(f"{q} lies outside the polygon")
    feature = _boundary_feature(P, q)

    W = P.coords
    rel = W - np.array([q.x, q.y])
    far = np.hypot(rel[:, 0], rel[:, 1]) > EPS
    ang = np.sort(np.arctan2(rel[far, 1], rel[far, 0]))
    keep = np.concatenate([[True], np.diff(ang) > _ANGLE_MERGE])
    ang = ang[keep]
    if len(ang) > 1 and ang[0] + 2 * math.pi - ang[-1] <= _ANGLE_MERGE:
        ang = ang[:-1]
    lo = ang
    hi = np.concatenate([ang[1:], [ang[0] + 2 * math.pi]])
    mid = 0.5 * (lo + hi)

    E0 = W
    E1 = P.coords_next
    # edges through q never block a ray leaving q
    ex, ey = E1[:, 0] - E0[:, 0], E1[:, 1] - E0[:, 1]
    L2 = ex * ex + ey * ey
    ss = np.clip(((q.x - E0[:, 0]) * ex + (q.y - E0[:, 1]) * ey) / L2, 0, 1)
    dq = np.hypot(q.x - (E0[:, 0] + ss * ex), q.y - (E0[:, 1] + ss * ey))
    usable = dq > EPS

    dxm, dym = np.cos(mid)[:, None], np.sin(mid)[:, None]
    wx, wy = E0[:, 0] - q.x, E0[:, 1] - q.y
    with np.errstate(divide="ignore", invalid="ignore"):
        den = dxm * ey - dym * ex
        tt = (wx * ey - wy * ex) / den
        uu = (wx * dym - wy * dxm) / den
    ok = usable & (den != 0) & (tt > 0) & (uu >= 0) & (uu <= 1)
    tt = np.where(ok, tt, np.inf)
    nearest = np.argmin(tt, axis=1)

    fan = []
    ring: list[Point] = []
    for k in range(len(mid)):
        if not _direction_enters(P, feature, q, (dxm[k, 0], dym[k, 0])):
            if ring and ring[-1] != q:
                ring.append(q)
            continue
        if not np.isfinite(tt[k, nearest[k]]):
            continue
        e = nearest[k]
        pts = []
        for th in (lo[k], hi[k]):
            c, s_ = math.cos(th), math.sin(th)
            dd = c * ey[e] - s_ * ex[e]
            t_ = (wx[e] * ey[e] - wy[e] * ex[e]) / dd
            pts.append(Point(q.x + t_ * c, q.y + t_ * s_))
        A, B = pts
        fan.append((A, B))
        for p in (A, B):
            if not ring or math.hypot(ring[-1].x - p.x, ring[-1].y - p.y) > EPS:
                ring.append(p)
    while len(ring) > 1 and math.hypot(ring[0].x - ring[-1].x, ring[0].y - ring[-1].y) <= EPS:
        ring.pop()
    if feature is not None and q not in ring:
        ring.append(q)
    region = Polygon.trusted(ring) if len(ring) >= 3 else Polygon.trusted([q, q, q])
    return VisibilityPolygon(q, region, tuple(fan))


@dataclass(frozen=True)
class IntervalOnSegment:
    host: Segment
    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(f"bad interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return (self.hi - self.lo) * self.host.length

    @property
    def start(self) -> Point:
        return self.host.at(self.lo)

    @property
    def end(self) -> Point:
        return self.host.at(self.hi)


def _merge(spans: list[tuple[float, float]], tol: float) -> list[tuple[float, float]]:
    spans.sort()
    out: list[list[float]] = []
    for lo, hi in spans:
        if out and lo <= out[-1][1] + tol:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


def _clip_to_triangle(t: Segment, tri) -> Optional[tuple[float, float]]:
    lo, hi = 0.0, 1.0
    for k in range(3):
        p0, p1 = tri[k], tri[(k + 1) % 3]
        elen = math.hypot(p1.x - p0.x, p1.y - p0.y)
        if elen == 0.0:
            return None
        f0 = cross(p0, p1, t.a) / elen + EPS
        f1 = cross(p0, p1, t.b) / elen + EPS
        if f0 < 0 and f1 < 0:
            return None
        if f0 < 0 or f1 < 0:
            r = f0 / (f0 - f1)
            if f0 < 0:
                lo = max(lo, r)
            else:
                hi = min(hi, r)
    if lo > hi:
        return None
    return lo, hi


def visible_intervals(P: Polygon, q, t: Segment) -> list[IntervalOnSegment]:
    """Maximal sub-intervals of ``t`` visible from ``q``, by clipping ``t``
    against the fan of the visibility polygon."""
    vp = visibility_polygon(P, q)
    spans = []
    for A, B in vp.fan:
        if cross(vp.apex, A, B) <= 0:
            continue
        span = _clip_to_triangle(t, (vp.apex, A, B))
        if span is not None:
            spans.append(span)
    tol = EPS / t.length
    return [
        IntervalOnSegment(t, float(lo), float(hi))
        for lo, hi in _merge(spans, tol)
        if (hi - lo) * t.length > EPS
    ]


def _halfline(alpha, beta, positive: bool):
    """Parameter range where ``alpha + beta*tau`` is > 0 (or < 0)."""
    if not positive:
        alpha, beta = -alpha, -beta
    lo = np.full_like(alpha, -np.inf)
    hi = np.full_like(alpha, np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        root = -alpha / beta
    pos = beta > 0
    neg = beta < 0
    zero = beta == 0
    lo = np.where(pos, root, lo)
    hi = np.where(neg, root, hi)
    dead = zero & ~(alpha > 0)
    lo = np.where(dead, np.inf, lo)
    hi = np.where(dead, -np.inf, hi)
    return lo, hi


def shadow_intervals(P: Polygon, q, t: Segment) -> list[tuple[float, float]]:
    """Visible parameter ranges of ``t`` from ``q`` as the complement of edge
    shadows. Independent of :func:`visibility_polygon`; O(n log n)."""
    qx, qy = float(q[0]), float(q[1])
    E0 = P.coords
    E1 = P.coords_next
    P0x, P0y = t.a.x, t.a.y
    Dx, Dy = t.b.x - t.a.x, t.b.y - t.a.y

    def along(ex_, ey_):
        # cross(q, p(tau), e) = alpha + beta*tau
        alpha = (P0x - qx) * (ey_ - qy) - (P0y - qy) * (ex_ - qx)
        beta = Dx * (ey_ - qy) - Dy * (ex_ - qx)
        return alpha, beta

    a0, b0 = along(E0[:, 0], E0[:, 1])
    a1, b1 = along(E1[:, 0], E1[:, 1])
    fx, fy = E1[:, 0] - E0[:, 0], E1[:, 1] - E0[:, 1]
    gq = fx * (qy - E0[:, 1]) - fy * (qx - E0[:, 0])
    g_a = fx * (P0y - E0[:, 1]) - fy * (P0x - E0[:, 0])
    g_b = fx * Dy - fy * Dx
    sgn = np.sign(gq)
    usable = sgn != 0

    glo, ghi = _halfline(g_a * sgn, g_b * sgn, positive=False)
    spans = []
    for first_pos in (True, False):
        lo0, hi0 = _halfline(a0, b0, positive=first_pos)
        lo1, hi1 = _halfline(a1, b1, positive=not first_pos)
        lo = np.maximum(np.maximum(lo0, lo1), np.maximum(glo, 0.0))
        hi = np.minimum(np.minimum(hi0, hi1), np.minimum(ghi, 1.0))
        good = usable & (lo < hi)
        spans.extend(zip(lo[good].tolist(), hi[good].tolist()))
    shadows = _merge(spans, 0.0)
    visible = []
    cur = 0.0
    for lo, hi in shadows:
        if lo > cur:
            visible.append((cur, lo))
        cur = max(cur, hi)
    if cur < 1.0:
        visible.append((cur, 1.0))
    min_len = EPS / t.length
    return [(lo, hi) for lo, hi in visible if hi - lo > min_len]


class PairClass(Enum):
    COMPLETELY_VISIBLE = "completely-visible"
    PARTIALLY_INVISIBLE = "partially-invisible"
    WEAKLY_VISIBLE = "weakly-visible"


def check_segment_inside(P: Polygon, s: Segment) -> None:
    codes = locate_many(P, [s.a, s.b])
    for p, c in zip(s, codes):
        if c == -1:
            raise SegmentOutsidePolygon(f"endpoint {p} of {s} is outside the polygon")
    if not sees_many(P, s.a, [s.b])[0]:
        raise SegmentOutsidePolygon(f"{s} leaves the polygon interior")


def _relevant_reflex(P: Polygon, s: Segment, t: Segment) -> list[Point]:
    pts = [s.a, s.b, t.a, t.b]
    try:
        hull = convex_hull(pts).vertices
    except GeometryError:
        return P.reflex_vertices
    out = []
    m = len(hull)
    for r in P.reflex_vertices:
        if all(cross(hull[k], hull[(k + 1) % m], r) >= -EPS * math.hypot(
                hull[(k + 1) % m].x - hull[k].x, hull[(k + 1) % m].y - hull[k].y) for k in range(m)):
            out.append(r)
    return out


def critical_params(P: Polygon, s: Segment, t: Segment) -> list[float]:
    """Parameters on ``s`` where the combinatorial view of ``t`` can change:
    crossings of ``s`` with lines through (reflex, endpoint of ``t``) and
    (reflex, reflex) pairs."""
    reflex = _relevant_reflex(P, s, t)
    lines = [(r, e) for r in reflex for e in (t.a, t.b) if r != e]
    lines += list(combinations(reflex, 2))
    out = {0.0, 1.0}
    for p, q in lines:
        try:
            c = line_cross_segment(p, q, s)
        except CollinearOverlap:
            continue
        if c is not None:
            out.add(min(1.0, max(0.0, s.param(c))))
    return sorted(out)


def _view_summary(P: Polygon, s: Segment, t: Segment) -> tuple[bool, bool]:
    """(every point of s sees some of t, every point of s sees all of t)."""
    events = critical_params(P, s, t)
    probes = list(events)
    probes += [0.5 * (u + v) for u, v in zip(events, events[1:]) if v - u > 1e-12]
    full = True
    for p in probes:
        spans = shadow_intervals(P, s.at(p), t)
        if not spans:
            return False, False
        if not (len(spans) == 1 and spans[0][0] <= 1e-12 and spans[0][1] >= 1 - 1e-12):
            full = False
    return True, full


def classify_pair(P: Polygon, s: Segment, t: Segment) -> PairClass:
    """Completely visible / weakly visible / partially invisible."""
    check_segment_inside(P, s)
    check_segment_inside(P, t)
    some_st, full_st = _view_summary(P, s, t)
    if not some_st:
        return PairClass.PARTIALLY_INVISIBLE
    some_ts, full_ts = _view_summary(P, t, s)
    if not some_ts:
        return PairClass.PARTIALLY_INVISIBLE
    if full_st and full_ts:
        return PairClass.COMPLETELY_VISIBLE
    return PairClass.WEAKLY_VISIBLE
