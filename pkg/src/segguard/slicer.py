"""Blocking vertices and the slicing algorithm that places guards on the source.

Conventions. The source is oriented ``x -> y`` so that the target lies on its
left; the target is oriented ``v -> u`` where ``x`` sees ``v``. Guards on the
x side advance their coverage from ``v`` towards ``u``; their blocking
vertices lie on the *handedness* side of the sight line (counter-clockwise in
the usual picture, where they are the left blocking vertices). The y side
mirrors this from ``u`` towards ``v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

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
    cross,
    dist,
    line_cross_segment,
    orient,
)
from .polygon import Polygon
from .visibility import PairClass, classify_pair, sees, shadow_intervals

LEFT = CCW
RIGHT = CW


class SliceError(GeometryError):
    pass


class NoTargetView(SliceError):
    pass


class DegenerateView(SliceError):
    pass


class NotWeaklyVisible(SliceError):
    pass


class IterationCapExceeded(SliceError):
    pass


class StalledWithoutProgress(SliceError):
    pass


@dataclass(frozen=True)
class BlockerResult:
    anchor: Point
    side: Orientation
    vertex: Optional[Point] = None
    t_point: Optional[Point] = None

    @property
    def present(self) -> bool:
        return self.vertex is not None

    @property
    def sight_line(self) -> Optional[tuple[Point, Point]]:
        return None if self.vertex is None else (self.anchor, self.vertex)


def extreme_end(q, t: Segment, side: Orientation) -> Point:
    """Endpoint of ``t`` furthest towards ``side`` as seen from ``q``."""
    o = orient(q, t.a, t.b)
    if o == COLLINEAR:
        raise DegenerateView(f"{q} is collinear with {t}")
    return t.b if o == side else t.a


def blocker_candidates(P: Polygon, q: Point, t: Segment, side: Orientation):
    """Reflex vertices ``r`` whose extended sight line from ``q`` reaches ``t``
    beyond ``r`` and whose incident edges both lie on ``side`` of that line.

    Yields ``(index, r, c)`` with ``c`` the hit point on ``t``; visibility of
    ``c`` is not checked here.
    """
    vs = P.vertices
    n = len(vs)
    for i in P.reflex_indices:
        r = vs[i]
        if dist(r, q) <= EPS:
            continue
        op, on = orient(q, r, vs[i - 1]), orient(q, r, vs[(i + 1) % n])
        if op == -side or on == -side or (op == COLLINEAR and on == COLLINEAR):
            continue
        try:
            c = line_cross_segment(q, r, t)
        except CollinearOverlap:
            continue
        if c is None:
            continue
        vx, vy = r.x - q.x, r.y - q.y
        vv = vx * vx + vy * vy
        if (c.x - q.x) * vx + (c.y - q.y) * vy <= vv + EPS * math.sqrt(vv):
            continue
        yield i, r, c


def compute_blocker(P: Polygon, q, t: Segment, side: Orientation) -> BlockerResult:
    """Blocking vertex of ``q``'s view of ``t`` on ``side`` (LEFT or RIGHT).

    Angular sweep from the ``side``-most end of ``t``: if that end is visible
    nothing blocks on this side; otherwise the first candidate whose sight
    line reaches ``t`` unobstructed is the blocker (collinear candidates are
    ordered nearest first).
    """
    q = as_point(q)
    end = extreme_end(q, t, side)
    if sees(P, q, end):
        return BlockerResult(q, side)
    ex, ey = end.x - q.x, end.y - q.y

    def sweep_key(item):
        _, r, _ = item
        rx, ry = r.x - q.x, r.y - q.y
        return math.atan2(abs(ex * ry - ey * rx), ex * rx + ey * ry), rx * rx + ry * ry

    for _, r, c in sorted(blocker_candidates(P, q, t, side), key=sweep_key):
        if sees(P, q, c):
            return BlockerResult(q, side, r, c)
    if not shadow_intervals(P, q, t):
        raise NoTargetView(f"{q} sees no point of {t}")
    raise DegenerateView(f"view of {t} from {q} is bounded by a collinear edge")


def compute_lbv(P: Polygon, q, t: Segment) -> BlockerResult:
    return compute_blocker(P, q, t, LEFT)


def compute_rbv(P: Polygon, q, t: Segment) -> BlockerResult:
    return compute_blocker(P, q, t, RIGHT)


class Termination(Enum):
    CROSS_OVER = "cross-over"
    SIDE_EXHAUSTED = "side-exhausted"
    COMPLETELY_VISIBLE = "completely-visible"


@dataclass
class IterationRecord:
    index: int
    x_point: Point
    y_point: Point
    lbv_x: BlockerResult
    rbv_y: BlockerResult
    # opposite-side blockers of the same points
    rbv_x: BlockerResult
    lbv_y: BlockerResult
    t_x: Optional[Point] = None
    t_y: Optional[Point] = None
    back_x: Optional[BlockerResult] = None
    back_y: Optional[BlockerResult] = None
    next_x: Optional[Point] = None
    next_y: Optional[Point] = None
    # blocker of the previous t-point seen from the target equals the
    # opposite-side blocker of this point; None when not applicable
    identity_x: Optional[bool] = None
    identity_y: Optional[bool] = None


@dataclass
class GuardSet:
    guards: list[Point]
    trace: list[IterationRecord]
    iterations: int
    reason: Termination
    source: Segment
    target: Segment
    handedness: Orientation
    ar: float
    bound: int
    x_side: list[Point] = field(default_factory=list)
    y_side: list[Point] = field(default_factory=list)
    # y sees the u end; the y-side chain assumes it, weak visibility alone
    # does not guarantee it
    y_sees_u: bool = True


def _label(P: Polygon, x: Point, y: Point, target: Segment):
    sa, sb = sees(P, x, target.a), sees(P, x, target.b)
    if not (sa or sb):
        return None
    if sa and sb:
        v = extreme_end(x, target, RIGHT if orient(x, y, target.midpoint) == CCW else LEFT)
    else:
        v = target.a if sa else target.b
    u = target.b if v == target.a else target.a
    if orient(x, v, u) == COLLINEAR:
        return None
    return Segment(x, y), Segment(v, u), Orientation(orient(x, v, u)), sees(P, y, u)


def orient_scene(P: Polygon, source: Segment, target: Segment) -> tuple[Segment, Segment, Orientation]:
    """Return ``(x->y, v->u, handedness)`` for a scene.

    The canonical labelling puts the target on the left of ``x -> y``. The
    method is mirror-symmetric, so the swapped labelling is used when it is
    the only one where ``x`` sees ``v`` and ``y`` sees ``u``, or when ``x``
    sees neither target end in the canonical one.
    """
    x, y = source.a, source.b
    if orient(x, y, target.midpoint) == CW:
        x, y = y, x
    labels = [_label(P, x, y, target), _label(P, y, x, target)]
    for lab in labels:
        if lab is not None and lab[3]:
            return lab[:3]
    for lab in labels:
        if lab is not None:
            return lab[:3]
    raise NoTargetView("neither source end sees an end of the target")


def _dedupe_along(src: Segment, pts: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in sorted(pts, key=src.param):
        if not out or dist(out[-1], p) > EPS:
            out.append(p)
    return out


def slice_guards(P: Polygon, source: Segment, target: Segment, *, ar: Optional[float] = None) -> GuardSet:
    """Place guards on ``source`` whose joint view covers ``target``."""
    cls = classify_pair(P, source, target)
    if cls == PairClass.PARTIALLY_INVISIBLE:
        raise NotWeaklyVisible("target is not weakly visible from the source")
    if ar is None:
        from .aspect import line_aspect_ratio

        ar = line_aspect_ratio(P).ar
    bound = 2 * (math.ceil(ar - 1e-12) + 1)
    cap = 4 * math.ceil(ar - 1e-12) + 16

    src, tgt, h = orient_scene(P, source, target)
    tol_s = EPS / src.length
    tol_t = EPS / tgt.length

    def record(i, xi, yi):
        return IterationRecord(
            index=i,
            x_point=xi,
            y_point=yi,
            lbv_x=compute_blocker(P, xi, tgt, h),
            rbv_y=compute_blocker(P, yi, tgt, Orientation(-h)),
            rbv_x=compute_blocker(P, xi, tgt, Orientation(-h)),
            lbv_y=compute_blocker(P, yi, tgt, h),
        )

    def back_project(tp: Point, side: Orientation) -> tuple[BlockerResult, Point]:
        b = compute_blocker(P, tp, src, side)
        if not b.present:
            return b, extreme_end(tp, src, side)
        hit = line_cross_segment(tp, b.vertex, src)
        if hit is None:
            raise DegenerateView(f"back-projection from {tp} misses the source")
        return b, hit

    trace: list[IterationRecord] = []
    x_side: list[Point] = [src.a]
    y_side: list[Point] = [src.b]
    xi, yi = src.a, src.b
    prev_tx = prev_ty = None
    reason = None
    iterations = 0
    for i in range(cap):
        rec = record(i, xi, yi)
        if trace:
            last = trace[-1]
            if last.back_x.present and rec.rbv_x.present:
                rec.identity_x = last.back_x.vertex == rec.rbv_x.vertex
            if last.back_y.present and rec.lbv_y.present:
                rec.identity_y = last.back_y.vertex == rec.lbv_y.vertex
        trace.append(rec)
        rec.t_x, rec.t_y = rec.lbv_x.t_point, rec.rbv_y.t_point
        if i == 0 and not rec.lbv_x.present and not rec.rbv_y.present:
            reason = Termination.COMPLETELY_VISIBLE
            break
        if not rec.lbv_x.present or not rec.rbv_y.present:
            reason = Termination.SIDE_EXHAUSTED
            iterations = i
            break
        tx, ty = tgt.param(rec.t_x), tgt.param(rec.t_y)
        if (prev_tx is not None and tx <= prev_tx + tol_t) or (prev_ty is not None and ty >= prev_ty - tol_t):
            raise StalledWithoutProgress(f"iteration {i}: target frontier did not advance")
        prev_tx, prev_ty = tx, ty

        rec.back_x, rec.next_x = back_project(rec.t_x, h)
        rec.back_y, rec.next_y = back_project(rec.t_y, Orientation(-h))
        x_side.append(rec.next_x)
        y_side.append(rec.next_y)
        if src.param(rec.next_x) >= src.param(rec.next_y) - tol_s:
            reason = Termination.CROSS_OVER
            iterations = i + 1
            final = record(i + 1, rec.next_x, rec.next_y)
            if rec.back_x.present and final.rbv_x.present:
                final.identity_x = rec.back_x.vertex == final.rbv_x.vertex
            if rec.back_y.present and final.lbv_y.present:
                final.identity_y = rec.back_y.vertex == final.lbv_y.vertex
            final.t_x, final.t_y = final.lbv_x.t_point, final.rbv_y.t_point
            trace.append(final)
            break
        if src.param(rec.next_x) <= src.param(xi) + tol_s:
            raise StalledWithoutProgress(f"iteration {i}: x side did not advance along the source")
        xi, yi = rec.next_x, rec.next_y
    else:
        raise IterationCapExceeded(f"no termination after {cap} iterations (AR={ar:.6g})")

    return GuardSet(
        guards=_dedupe_along(src, x_side + y_side),
        trace=trace,
        iterations=iterations,
        reason=reason,
        source=src,
        target=tgt,
        handedness=h,
        ar=ar,
        bound=bound,
        x_side=x_side,
        y_side=y_side,
        y_sees_u=sees(P, src.b, tgt.b),
    )
