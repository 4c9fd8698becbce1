import json
import math
import time

import pytest

from segguard.geom import CCW, CW, Segment
from segguard.oracle import brute_blockers, coverage_report, random_scene
from segguard.polygon import validate
from segguard.slicer import (
    NotWeaklyVisible,
    NoTargetView,
    Termination,
    compute_lbv,
    compute_rbv,
    slice_guards,
)
from segguard.visibility import sees, shadow_intervals

from conftest import GOLDEN, L8_PTS, L8_SOURCE, L8_TARGET, L8_TY, close


def test_lbv_examples(SQ, L8):
    b = compute_lbv(L8, (0.5, 1), L8_TARGET)
    assert b.vertex == (5, 3)
    assert close(b.t_point, (7.9, L8_TY))
    assert b.sight_line == ((0.5, 1), (5, 3))
    assert sees(L8, b.anchor, b.t_point)
    assert not compute_lbv(L8, (7.5, 1), L8_TARGET).present
    assert not compute_lbv(SQ, (0.5, 0.1), Segment((0.2, 0.9), (0.8, 0.9))).present


def test_rbv_examples(SQ, L8):
    assert not compute_rbv(L8, (7.5, 1), L8_TARGET).present
    assert not compute_rbv(SQ, (0.5, 0.1), Segment((0.2, 0.9), (0.8, 0.9))).present
    M = validate([(8 - x, y) for x, y in L8_PTS])
    t = Segment((0.1, 2.5), (0.1, 7.9))
    b = compute_rbv(M, (7.5, 1), t)  # mirror image of the LBV example
    assert b.vertex == (3, 3)
    assert close(b.t_point, (0.1, L8_TY))


def test_blocker_without_view_raises(L8):
    with pytest.raises(NoTargetView):
        compute_lbv(L8, (2, 1), Segment((7.9, 6), (7.9, 7.9)))


def test_l8_slice():
    L8 = validate(L8_PTS)
    t0 = time.perf_counter()
    gs = slice_guards(L8, L8_SOURCE, L8_TARGET)
    rep = coverage_report(L8, gs.guards, gs.target, 10000)
    assert time.perf_counter() - t0 < 1.0
    assert gs.guards == [(0.5, 1), (7.5, 1)]
    assert gs.iterations == 0
    assert gs.reason == Termination.SIDE_EXHAUSTED
    assert gs.trace[0].lbv_x.vertex == (5, 3)
    assert not gs.trace[0].rbv_y.present
    assert rep.covered_fraction == 1.0


def test_sq_slice(scenes):
    sc = scenes["sq"]
    gs = slice_guards(sc.polygon, sc.source, sc.target)
    assert gs.reason == Termination.COMPLETELY_VISIBLE
    assert set(gs.guards) == {sc.source.a, sc.source.b}


def test_not_weakly_visible(scenes):
    sc = scenes["l8_partial"]
    with pytest.raises(NotWeaklyVisible):
        slice_guards(sc.polygon, sc.source, sc.target)


@pytest.mark.parametrize("name", ["z10", "slit"])
def test_golden_guards(scenes, name):
    sc = scenes[name]
    gs = slice_guards(sc.polygon, sc.source, sc.target)
    want = json.loads((GOLDEN / f"{name}_guards.json").read_text())
    assert len(gs.guards) == want["count"] <= gs.bound == want["bound"]
    for g, w in zip(gs.guards, want["guards"]):
        assert close(g, w, 1e-9)
    assert gs.reason.value == want["reason"]
    assert gs.iterations == want["iterations"]
    assert coverage_report(sc.polygon, gs.guards, gs.target, 10000).complete


def check_trace(P, gs):
    """Trace properties that hold for every slice."""
    tgt, src = gs.target, gs.source
    eps = 1e-9 / tgt.length
    for a, b in zip(gs.guards, gs.guards[1:]):
        assert src.param(a) < src.param(b)
    assert gs.guards[0] == src.a and gs.guards[-1] == src.b
    assert len(gs.guards) <= 2 * (gs.iterations + 1)
    tx = [tgt.param(r.t_x) for r in gs.trace if r.t_x is not None and r.next_x is not None]
    ty = [tgt.param(r.t_y) for r in gs.trace if r.t_y is not None and r.next_y is not None]
    assert all(b > a for a, b in zip(tx, tx[1:]))
    assert all(b < a for a, b in zip(ty, ty[1:]))
    for prev, rec in zip(gs.trace, gs.trace[1:]):
        assert rec.identity_x in (None, True)
        assert rec.identity_y in (None, True)
        # the next guard's view reaches back to the previous frontier
        for tp, q in ((prev.t_x, rec.x_point), (prev.t_y, rec.y_point)):
            if tp is None:
                continue
            tau = tgt.param(tp)
            assert any(lo - eps <= tau <= hi + eps for lo, hi in shadow_intervals(P, q, tgt))
    for rec in gs.trace:
        for b in (rec.lbv_x, rec.rbv_y, rec.rbv_x, rec.lbv_y):
            if b.present:
                assert P.reflex[P.vertices.index(b.vertex)]
                assert sees(P, b.anchor, b.t_point)


def test_trace_properties_on_fixtures(scenes):
    for name in ("l8", "z10", "slit"):
        sc = scenes[name]
        check_trace(sc.polygon, slice_guards(sc.polygon, sc.source, sc.target))


def test_slit_trace_details(scenes):
    sc = scenes["slit"]
    gs = slice_guards(sc.polygon, sc.source, sc.target)
    assert gs.reason == Termination.CROSS_OVER
    assert gs.handedness in (CCW, CW)
    # the crossing record carries blockers for the final guard pair
    last = gs.trace[-1]
    assert last.index == gs.iterations
    assert last.x_point == gs.x_side[-1] and last.y_point == gs.y_side[-1]


def test_trace_properties_on_generated_scenes():
    for seed in range(1, 16):
        sc = random_scene(seed, 8 + seed % 10)
        gs = slice_guards(sc.polygon, sc.source, sc.target)
        check_trace(sc.polygon, gs)
        for rec in gs.trace:
            for q in (rec.x_point, rec.y_point):
                bb = brute_blockers(sc.polygon, q, gs.target)
                left = compute_lbv(sc.polygon, q, gs.target).vertex
                right = compute_rbv(sc.polygon, q, gs.target).vertex
                assert (bb.left, bb.right) == (left, right)


def test_bound_formula(scenes):
    sc = scenes["z10"]
    gs = slice_guards(sc.polygon, sc.source, sc.target)
    assert gs.bound == 2 * (math.ceil(gs.ar) + 1) == 32
