"""Brute-force checkers and the seeded scene generator.

Nothing here shares code paths with the sweep or the slicer beyond the basic
predicates, so agreement between the two sides means something.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .geom import (
    CCW,
    COLLINEAR,
    CW,
    EPS,
    CollinearOverlap,
    GeometryError,
    Orientation,
    Point,
    Segment,
    as_point,
    dist,
    line_cross_segment,
    orient,
    segment_distance,
    segment_intersection,
)
from .polygon import Polygon, PolygonError, locate_many, validate
from .visibility import (
    PairClass,
    SegmentOutsidePolygon,
    check_segment_inside,
    classify_pair,
    sees,
    sees_many,
)


class GenerationBudgetExceeded(RuntimeError):
    pass


@dataclass
class CoverageReport:
    samples: int
    uncovered: list[tuple[float, Point]]
    covered_fraction: float

    @property
    def complete(self) -> bool:
        return not self.uncovered


def coverage_report(P: Polygon, guards: Sequence, t: Segment, n: int = 2048) -> CoverageReport:
    """Sample ``n + 1`` evenly spaced target points and test them against every guard."""
    if n < 2:
        raise ValueError("need at least 2 sample intervals")
    params = np.linspace(0.0, 1.0, n + 1)
    a, b = np.array(t.a), np.array(t.b)
    pts = a + params[:, None] * (b - a)
    pts[0], pts[-1] = a, b
    covered = np.zeros(n + 1, dtype=bool)
    for g in guards:
        todo = ~covered
        if not todo.any():
            break
        covered[todo] |= sees_many(P, as_point(g), pts[todo])
    uncovered = [(float(params[i]), Point(float(pts[i, 0]), float(pts[i, 1]))) for i in np.flatnonzero(~covered)]
    return CoverageReport(n + 1, uncovered, 1.0 - len(uncovered) / (n + 1))


@dataclass(frozen=True)
class BruteBlockers:
    left: Optional[Point]
    right: Optional[Point]
    # raw candidates passing every per-vertex condition, before the
    # closest-along-the-line tie-break
    left_raw: tuple[Point, ...] = ()
    right_raw: tuple[Point, ...] = ()
    # survivors after collinear candidates are merged; uniqueness says <= 1
    left_survivors: int = 0
    right_survivors: int = 0

    def __iter__(self):
        yield self.left
        yield self.right


def _brute_side(P: Polygon, q: Point, t: Segment, side: Orientation):
    raw = []
    vs = P.vertices
    for i, r in enumerate(vs):
        if not P.reflex[i] or r == q:
            continue
        # exterior on the prescribed side: both incident edges there (closed)
        sides = (orient(q, r, vs[i - 1]), orient(q, r, P.next(i)))
        if any(s == -side for s in sides) or all(s == COLLINEAR for s in sides):
            continue
        try:
            c = line_cross_segment(q, r, t)
        except CollinearOverlap:
            continue
        # r must sit strictly between q and the hit point
        if c is None or dist(q, c) <= dist(q, r) + EPS or dist(r, c) >= dist(q, c):
            continue
        if not sees(P, q, c):
            continue
        raw.append(r)
    # group by sight line
    groups: list[list[Point]] = []
    for r in raw:
        for g in groups:
            if orient(q, g[0], r) == COLLINEAR:
                g.append(r)
                break
        else:
            groups.append([r])
    # the blocker has every other candidate on the prescribed side or on its line
    reps = [min(g, key=lambda r: dist(q, r)) for g in groups]
    best = [r for r in reps if all(orient(q, r, o) != -side for o in reps)]
    return (best[0] if best else None), tuple(raw), len(groups)


def brute_blockers(P: Polygon, q, t: Segment) -> BruteBlockers:
    """Exhaustive per-vertex check of the blocking conditions, both sides."""
    q = as_point(q)
    left, lraw, lc = _brute_side(P, q, t, CCW)
    right, rraw, rc = _brute_side(P, q, t, CW)
    return BruteBlockers(left, right, lraw, rraw, lc, rc)


def vp_oracle(P: Polygon, q, rays: int = 4096) -> float:
    """Area of the star-shaped region swept by ``rays`` evenly spaced rays from ``q``."""
    if rays < 360:
        raise ValueError("use at least 360 rays")
    q = as_point(q)
    theta = (np.arange(rays) + 0.5) * (2 * math.pi / rays)
    dx, dy = np.cos(theta)[:, None], np.sin(theta)[:, None]
    a, b = P.coords, P.coords_next
    ex, ey = (b - a)[:, 0], (b - a)[:, 1]
    wx, wy = a[:, 0] - q.x, a[:, 1] - q.y
    den = dx * ey - dy * ex
    with np.errstate(divide="ignore", invalid="ignore"):
        tt = (wx * ey - wy * ex) / den
        uu = (wx * dy - wy * dx) / den
    ok = (den != 0) & (tt > 1e-12) & (uu >= 0) & (uu <= 1)
    r = np.where(ok, tt, np.inf).min(axis=1)
    r[~np.isfinite(r)] = 0.0
    return float(0.5 * (r * r).sum() * (2 * math.pi / rays))


# -- scene generation ---------------------------------------------------------


@dataclass
class Scene:
    polygon: Polygon
    source: Segment
    target: Segment
    seed: Optional[int] = None
    name: Optional[str] = None
    meta: dict = field(default_factory=dict)


def _crossing_pairs(pts: np.ndarray) -> list[tuple[int, int]]:
    """Non-adjacent edge pairs whose float orientations say they meet."""
    a = pts
    b = np.roll(pts, -1, axis=0)

    def o(p, q, r):
        return np.sign((q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0]))

    A, B = a[:, None, :], b[:, None, :]
    C, D = a[None, :, :], b[None, :, :]
    hit = (o(A, B, C) * o(A, B, D) <= 0) & (o(C, D, A) * o(C, D, B) <= 0)
    n = len(pts)
    i, j = np.nonzero(np.triu(hit, 2))
    keep = ~((i == 0) & (j == n - 1))
    return list(zip(i[keep].tolist(), j[keep].tolist()))


def untangle(pts: list, max_moves: int = 100_000) -> list:
    """2-opt: reverse the chain between two crossing edges until none cross."""
    pts = list(pts)
    n = len(pts)
    for _ in range(max_moves):
        for i, j in _crossing_pairs(np.array(pts)):
            e1 = Segment(pts[i], pts[(i + 1) % n])
            e2 = Segment(pts[j], pts[(j + 1) % n])
            if segment_intersection(e1, e2) is not None:
                pts[i + 1 : j + 1] = pts[i + 1 : j + 1][::-1]
                break
        else:
            return pts
    raise GenerationBudgetExceeded("2-opt did not converge")


def random_polygon(rng: np.random.Generator, n: int, size: float = 100.0) -> Polygon:
    """Random simple polygon on ``n`` points drawn uniformly in a square."""
    while True:
        raw = np.round(rng.uniform(0.0, size, size=(n, 2)), 6)
        pts = [Point(float(x), float(y)) for x, y in raw]
        if len(set(pts)) < n:
            continue
        try:
            return validate(untangle(pts))
        except PolygonError:
            continue  # collinear triples can survive 2-opt as touching edges


def _random_interior_point(rng, P: Polygon) -> Point:
    x0, y0, x1, y1 = P.bbox
    while True:
        batch = np.round(rng.uniform((x0, y0), (x1, y1), size=(32, 2)), 6)
        hits = np.flatnonzero(locate_many(P, batch) == 1)
        if len(hits):
            p = batch[hits[0]]
            return Point(float(p[0]), float(p[1]))


def _random_segment(rng, P: Polygon, max_len: float) -> Optional[Segment]:
    a = _random_interior_point(rng, P)
    ang = rng.uniform(0, 2 * math.pi)
    L = rng.uniform(0.05, 1.0) * max_len
    b = Point(round(a.x + L * math.cos(ang), 6), round(a.y + L * math.sin(ang), 6))
    try:
        s = Segment(a, b)
        check_segment_inside(P, s)
    except (GeometryError, SegmentOutsidePolygon):
        return None
    return s


def random_scene(seed: int, n_vertices: int, *, attempts: int = 400, polygons: int = 25) -> Scene:
    """Seeded weakly visible scene on a random simple polygon.

    Each polygon gets ``attempts`` segment pairs before a fresh polygon is
    drawn; ``polygons`` bounds the total.
    """
    if n_vertices < 4:
        raise ValueError("random_scene needs at least 4 vertices")
    rng = np.random.default_rng(seed)
    for _ in range(polygons):
        P = random_polygon(rng, n_vertices)
        if not P.reflex_indices:
            continue
        x0, y0, x1, y1 = P.bbox
        span = math.hypot(x1 - x0, y1 - y0)
        for _ in range(attempts):
            s = _random_segment(rng, P, 0.3 * span)
            t = _random_segment(rng, P, 0.3 * span) if s is not None else None
            if s is None or t is None:
                continue
            if min(segment_distance(s.a, s.b, t.a), segment_distance(s.a, s.b, t.b),
                   segment_distance(t.a, t.b, s.a), segment_distance(t.a, t.b, s.b)) < 1e-3:
                continue
            if classify_pair(P, s, t) == PairClass.WEAKLY_VISIBLE:
                return Scene(P, s, t, seed=seed)
    raise GenerationBudgetExceeded(f"seed {seed}: no weakly visible scene within budget")
