import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from segguard.oracle import random_polygon
from segguard.polygon import (
    DuplicateVertex,
    PointLocation,
    SelfIntersecting,
    TooFewVertices,
    convex_hull,
    locate,
    locate_many,
    turning_angle_sum,
    validate,
)

from conftest import L8_PTS, SQ_PTS, Z10_PTS


def test_validate_examples():
    sq = validate(SQ_PTS)
    assert sq.reflex_vertices == []
    l8 = validate(L8_PTS)
    assert l8.reflex_vertices == [(5, 3)]
    with pytest.raises(SelfIntersecting) as e:
        validate([(0, 0), (2, 2), (2, 0), (0, 2)])
    assert len(e.value.edges) == 2


def test_validate_errors():
    with pytest.raises(TooFewVertices):
        validate([(0, 0), (1, 0)])
    with pytest.raises(DuplicateVertex):
        validate([(0, 0), (1, 0), (1, 1), (1, 0), (0, 1)])
    # an explicitly closed ring is fine
    assert validate(SQ_PTS + [SQ_PTS[0]]).n == 4


def test_cw_input_is_reversed():
    P = validate(L8_PTS[::-1])
    assert P.area > 0
    assert set(P.vertices) == set(validate(L8_PTS).vertices)
    assert P.reflex_vertices == [(5, 3)]


def test_straight_vertex_is_flagged_not_reflex():
    P = validate([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])
    assert P.collinear == (1,)
    assert not any(P.reflex)


def test_locate_examples(L8):
    assert locate(L8, (1, 1)) == PointLocation.INTERIOR
    assert locate(L8, (4, 5)) == PointLocation.EXTERIOR
    assert locate(L8, (5, 5)) == PointLocation.BOUNDARY


def test_hull_examples(SQ, L8, Z10):
    assert convex_hull(SQ).vertices == SQ.vertices
    assert list(convex_hull(L8).vertices) == [(0, 0), (8, 0), (8, 8), (5, 8), (0, 3)]
    assert list(convex_hull(Z10).vertices) == [(0, 0), (10, 0), (10, 10), (0, 10)]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(4, 30))
def test_random_polygon_invariants(seed, n):
    P = random_polygon(np.random.default_rng(seed), n)
    assert abs(turning_angle_sum(P) - 2 * math.pi) < 1e-6
    R = validate(P.vertices[::-1])
    assert R == P
    assert R.area == pytest.approx(P.area)
    hull = set(convex_hull(P).vertices)
    for i, v in enumerate(P.vertices):
        if v in hull:
            assert not P.reflex[i]
    pts = np.random.default_rng(seed).uniform(-5, 105, size=(50, 2))
    codes = locate_many(P, pts)
    want = {PointLocation.INTERIOR: 1, PointLocation.BOUNDARY: 0, PointLocation.EXTERIOR: -1}
    assert [want[locate(P, p)] for p in pts] == codes.tolist()
