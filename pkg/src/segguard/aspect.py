"""Polygon widths and aspect ratios.

Two ratios are computed. The line ratio divides the long width (hull
diameter) by the short width, the narrowest strip between two parallel lines
tangent to reflex vertices. The disk ratio divides the diameter of the
smallest enclosing circle by that of the largest inscribed circle.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geom import EPS, Overlap, Point, Segment, dist, segment_intersection
from .polygon import Polygon, PointLocation, convex_hull, locate

# tolerance on the tangency cone test; candidate normals are built from the
# same edge directions, so only rounding noise has to be absorbed
_CONE_TOL = 1e-9


@dataclass(frozen=True)
class SWWitness:
    r1: Point
    r2: Point
    normal: Point  # unit normal; strip lines are <p - r1, n> = 0 and <p - r2, n> = 0

    @property
    def pair(self) -> frozenset:
        return frozenset((self.r1, self.r2))


@dataclass(frozen=True)
class LineAspect:
    lw: float
    sw: float
    ar: float
    witness: Optional[SWWitness] = None


@dataclass(frozen=True)
class DiskAspect:
    ld: float
    sd: float
    ar: float
    enclosing_center: Point
    inscribed_center: Point


def long_width(P: Polygon) -> float:
    """Hull diameter: the largest distance between parallel supporting lines."""
    hv = convex_hull(P).vertices
    return max(dist(a, b) for i, a in enumerate(hv) for b in hv[i + 1 :])


def _segment_meets_interior(P: Polygon, a: Point, b: Point) -> bool:
    """True when the open segment ``ab`` has a point in the polygon interior."""
    seg = Segment(a, b)
    ts = {0.0, 1.0}
    for e0, e1 in P.edges():
        hit = segment_intersection(seg, Segment(e0, e1))
        if hit is None:
            continue
        for p in hit if isinstance(hit, Overlap) else (hit,):
            ts.add(min(1.0, max(0.0, seg.param(p))))
    ts = sorted(ts)
    for lo, hi in zip(ts, ts[1:]):
        if hi - lo > 1e-12 and locate(P, seg.at(0.5 * (lo + hi))) == PointLocation.INTERIOR:
            return True
    return False


def _edge_dirs(P: Polygon, i: int) -> tuple[tuple[float, float], tuple[float, float]]:
    v, a, b = P.vertices[i], P.prev(i), P.next(i)
    return (a.x - v.x, a.y - v.y), (b.x - v.x, b.y - v.y)


def _unit_perps(d) -> list[tuple[float, float]]:
    L = math.hypot(d[0], d[1])
    return [(-d[1] / L, d[0] / L), (d[1] / L, -d[0] / L)]


def short_width(P: Polygon) -> tuple[float, Optional[SWWitness]]:
    """Narrowest admissible reflex strip, or the long width when none exists.

    For a pair ``(r1, r2)`` and unit normal ``n`` the strip is admissible when
    ``r2`` lies strictly on the ``+n`` side of ``r1``, the edges at ``r1`` point
    to ``-n`` (or along the line), the edges at ``r2`` point to ``+n``, and the
    open segment ``r1 r2`` passes through the interior. The width
    ``<r2 - r1, n>`` is minimised over each pair's admissible cone, whose
    extreme rays are perpendicular to one of the four incident edges.
    """
    idx = P.reflex_indices
    if len(idx) < 2:
        return long_width(P), None

    cands = []
    for i in idx:
        r1 = P.vertices[i]
        d1 = _edge_dirs(P, i)
        for k in idx:
            if k == i:
                continue
            r2 = P.vertices[k]
            d2 = _edge_dirs(P, k)
            wx, wy = r2.x - r1.x, r2.y - r1.y
            sep = math.hypot(wx, wy)
            for d in d1 + d2:
                for nx, ny in _unit_perps(d):
                    if any(dx * nx + dy * ny > _CONE_TOL * math.hypot(dx, dy) for dx, dy in d1):
                        continue
                    if any(dx * nx + dy * ny < -_CONE_TOL * math.hypot(dx, dy) for dx, dy in d2):
                        continue
                    w = wx * nx + wy * ny
                    if w <= EPS * sep:
                        continue
                    # exact zeros keep axis-aligned witnesses tidy
                    n = Point(nx + 0.0 if nx else 0.0, ny + 0.0 if ny else 0.0)
                    cands.append((w, r1, r2, n))

    checked: dict[tuple[Point, Point], bool] = {}
    for w, r1, r2, n in sorted(cands):
        key = (min(r1, r2), max(r1, r2))
        if key not in checked:
            checked[key] = _segment_meets_interior(P, r1, r2)
        if checked[key]:
            return w, SWWitness(r1, r2, n)
    return long_width(P), None


def line_aspect_ratio(P: Polygon) -> LineAspect:
    lw = long_width(P)
    sw, witness = short_width(P)
    return LineAspect(lw, sw, lw / sw, witness)


# -- enclosing circle ---------------------------------------------------------


def _circle_two(a, b):
    c = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    return c, dist(a, b) / 2


def _circle_three(a, b, c):
    ax, ay = a
    bx, by = b[0] - ax, b[1] - ay
    cx, cy = c[0] - ax, c[1] - ay
    d = 2 * (bx * cy - by * cx)
    if d == 0:
        # collinear: the widest pair spans the circle
        return max((_circle_two(p, q) for p, q in ((a, b), (a, c), (b, c))), key=lambda t: t[1])
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return (ax + ux, ay + uy), math.hypot(ux, uy)


def _inside(circle, p, slack=1e-12) -> bool:
    (cx, cy), r = circle
    return math.hypot(p[0] - cx, p[1] - cy) <= r * (1 + slack) + slack


def min_enclosing_circle(points: Sequence, seed: int = 0) -> tuple[Point, float]:
    """Welzl's randomised incremental algorithm (iterative form).

    The shuffle is seeded so the result is reproducible.
    """
    pts = [tuple(map(float, p)) for p in points]
    random.Random(seed).shuffle(pts)
    circle = (pts[0], 0.0)
    for i, p in enumerate(pts):
        if _inside(circle, p):
            continue
        circle = (p, 0.0)
        for j in range(i):
            q = pts[j]
            if _inside(circle, q):
                continue
            circle = _circle_two(p, q)
            for k in range(j):
                if not _inside(circle, pts[k]):
                    circle = _circle_three(p, q, pts[k])
    (cx, cy), r = circle
    return Point(cx, cy), r


# -- inscribed circle ---------------------------------------------------------


def _signed_distance(P: Polygon, x: float, y: float) -> float:
    a, b = P.coords, P.coords_next
    d = b - a
    L2 = (d * d).sum(axis=1)
    s = np.clip(((x - a[:, 0]) * d[:, 0] + (y - a[:, 1]) * d[:, 1]) / L2, 0.0, 1.0)
    m = float(np.hypot(x - (a[:, 0] + s * d[:, 0]), y - (a[:, 1] + s * d[:, 1])).min())
    straddle = (a[:, 1] > y) != (b[:, 1] > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xc = a[:, 0] + (y - a[:, 1]) * d[:, 0] / d[:, 1]
    inside = int((straddle & (xc > x)).sum()) % 2 == 1
    return m if inside else -m


def pole_of_inaccessibility(P: Polygon, precision: Optional[float] = None) -> tuple[Point, float]:
    """Interior point farthest from the boundary, by best-first grid refinement.

    The default tolerance is relative (1e-10 of the bounding box extent,
    never looser than 1e-6), which keeps the result scale-equivariant.
    """
    x0, y0, x1, y1 = P.bbox
    if precision is None:
        precision = min(1e-6, 1e-10 * max(x1 - x0, y1 - y0))
    size = min(x1 - x0, y1 - y0)
    h = size / 2
    heap: list = []
    counter = 0

    def push(cx, cy, half):
        nonlocal counter
        d = _signed_distance(P, cx, cy)
        # upper bound on the distance attainable inside this cell
        heapq.heappush(heap, (-(d + half * math.sqrt(2)), counter, cx, cy, half, d))
        counter += 1

    cx = x0
    while cx < x1:
        cy = y0
        while cy < y1:
            push(cx + h, cy + h, h)
            cy += size
        cx += size

    # area centroid as the initial best guess
    c = P.coords
    xs, ys = c[:, 0], c[:, 1]
    xn, yn = np.roll(xs, -1), np.roll(ys, -1)
    f = xs * yn - xn * ys
    A = f.sum() / 2
    gx, gy = float(((xs + xn) * f).sum() / (6 * A)), float(((ys + yn) * f).sum() / (6 * A))
    best = (_signed_distance(P, gx, gy), gx, gy)
    bc = ((x0 + x1) / 2, (y0 + y1) / 2)
    bd = _signed_distance(P, *bc)
    if bd > best[0]:
        best = (bd, *bc)

    while heap:
        neg_max, _, cx, cy, half, d = heapq.heappop(heap)
        if d > best[0]:
            best = (d, cx, cy)
        if -neg_max - best[0] <= precision:
            break  # the heap is ordered by bound, nothing left can do better
        q = half / 2
        for sx in (-q, q):
            for sy in (-q, q):
                push(cx + sx, cy + sy, q)
    return Point(best[1], best[2]), best[0]


def disk_aspect_ratio(P: Polygon) -> DiskAspect:
    ce, re = min_enclosing_circle(P.vertices)
    ci, ri = pole_of_inaccessibility(P)
    ld, sd = 2 * re, 2 * ri
    return DiskAspect(ld, sd, ld / sd, ce, ci)
