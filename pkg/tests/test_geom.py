import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from segguard.geom import (
    CCW,
    COLLINEAR,
    CW,
    CollinearOverlap,
    DegenerateSegment,
    NonFiniteCoordinate,
    Overlap,
    Point,
    Segment,
    line_cross_segment,
    orient,
    segment_intersection,
)

coord = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


def test_orient_examples():
    assert orient((0, 0), (1, 0), (0, 1)) == CCW
    assert orient((0, 0), (1, 1), (2, 2)) == COLLINEAR
    assert orient((0, 0), (0, 1), (1, 0)) == CW


def test_orient_rejects_non_finite():
    with pytest.raises(NonFiniteCoordinate):
        orient((0, 0), (math.nan, 0), (0, 0))
    with pytest.raises(NonFiniteCoordinate):
        Segment((0, 0), (math.inf, 1))


def test_orient_is_exact_near_degeneracy():
    # classic near-collinear triple where the naive determinant is unreliable
    p, q = (0.5, 0.5), (12.0, 12.0)
    for k in range(-3, 4):
        r = (24.0 + k * 2.0**-48, 24.0)
        det = (Fraction(q[0]) - Fraction(p[0])) * (Fraction(r[1]) - Fraction(p[1])) - (
            Fraction(q[1]) - Fraction(p[1])
        ) * (Fraction(r[0]) - Fraction(p[0]))
        expect = CCW if det > 0 else CW if det < 0 else COLLINEAR
        assert orient(p, q, r) == expect


@given(point, point, point)
def test_orient_antisymmetric_and_cyclic(p, q, r):
    o = orient(p, q, r)
    assert orient(p, r, q) == -o
    assert orient(q, r, p) == o == orient(r, p, q)


@given(point, point, point)
def test_orient_matches_rational_sign(p, q, r):
    F = Fraction
    det = (F(q[0]) - F(p[0])) * (F(r[1]) - F(p[1])) - (F(q[1]) - F(p[1])) * (F(r[0]) - F(p[0]))
    assert int(orient(p, q, r)) == (det > 0) - (det < 0)


def test_segment_rejects_zero_length():
    with pytest.raises(DegenerateSegment):
        Segment((1, 1), (1, 1))


def test_segment_intersection_examples():
    assert segment_intersection(Segment((0, 0), (2, 2)), Segment((0, 2), (2, 0))) == (1, 1)
    assert segment_intersection(Segment((0, 0), (1, 0)), Segment((0, 1), (1, 1))) is None
    ov = segment_intersection(Segment((0, 0), (2, 0)), Segment((1, 0), (3, 0)))
    assert isinstance(ov, Overlap) and set(ov) == {(1, 0), (2, 0)}


@given(point, point, point, point)
def test_segment_intersection_symmetric_and_straddle(a, b, c, d):
    if a == b or c == d:
        return
    s1, s2 = Segment(a, b), Segment(c, d)
    h1, h2 = segment_intersection(s1, s2), segment_intersection(s2, s1)
    if isinstance(h1, Overlap):
        assert isinstance(h2, Overlap) and set(h1) == set(h2)
    else:
        assert h1 == h2
    proper = orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0
    if proper:
        assert isinstance(h1, Point)
    if h1 is None:
        assert not proper


def test_line_cross_segment_examples():
    p = line_cross_segment((0.5, 1), (5, 3), Segment((7.9, 2.5), (7.9, 7.9)))
    assert p.x == 7.9 and abs(p.y - 38.6 / 9) < 1e-12
    assert line_cross_segment((0, 0), (1, 0), Segment((2, 1), (2, 3))) is None
    with pytest.raises(CollinearOverlap):
        line_cross_segment((0, 0), (0, 1), Segment((0, 2), (0, 5)))


@given(point, point, point, point)
def test_line_cross_segment_lies_on_line(p, q, a, b):
    if p == q or a == b:
        return
    try:
        c = line_cross_segment(p, q, Segment(a, b))
    except CollinearOverlap:
        return
    if c is None:
        return
    # constructed point: on the line up to rounding of the construction
    L = math.hypot(q[0] - p[0], q[1] - p[1])
    off = abs((q[0] - p[0]) * (c[1] - p[1]) - (q[1] - p[1]) * (c[0] - p[0])) / L
    scale = max(1.0, *map(abs, (*p, *q, *a, *b)))
    assert off <= 1e-9 * scale * scale / max(L, 1e-300) + 1e-9 * scale
