"""One-parameter families: simulation, transition rules, audits."""

import random
from fractions import Fraction

import pytest

from chordbars import (F2, FP, INF, QQ, Birth, Death, DriftSegment,
                       EntryAbove, EntryBelow, ExitAbove, ExitBelow,
                       FilteredComplex, HandleSlide, check_transitions,
                       drift_speed_audit, random_timeline, simulate,
                       vineyard_rows)
from chordbars.errors import (ActionIncrease, EventPreconditionViolated,
                              NonGenericCrossing, SimultaneousBifurcations,
                              ValidationError)

q = Fraction


def _pair_complex(field=F2, window=(0, INF)):
    return FilteredComplex(field, window,
                           [("a", 1, 0), ("b", q(3, 2), 1), ("c", 2, 1)],
                           {"b": {"a": 1}})


def test_empty_timeline_single_sample():
    cx = _pair_complex()
    trace = simulate(cx, [])
    assert len(trace.samples) == 1
    assert check_transitions(trace).ok


def test_pure_drift_moves_endpoints():
    cx = _pair_complex()
    trace = simulate(cx, [
        DriftSegment(0, 1, {"a": [(0, 1), (1, q(5, 4))],
                            "b": q(3, 2), "c": 2}),
    ])
    assert check_transitions(trace).ok
    rows = vineyard_rows(trace)
    # the finite bar's start follows the trajectory of its birth generator
    finite = [r for r in rows if r[3] != INF]
    assert finite[0][2] == 1 and finite[-1][2] == q(5, 4)
    assert all(len(r) == 5 for r in rows)


def test_slide_death_birth_script():
    cx = _pair_complex()
    items = [
        DriftSegment(0, q(1, 4), {"a": [(0, 1), (q(1, 4), q(9, 8))],
                                  "b": q(3, 2), "c": 2}),
        HandleSlide(q(1, 4), "c", {"b": 1}),
        DriftSegment(q(1, 4), q(1, 2),
                     {"a": [(q(1, 4), q(9, 8)), (q(1, 2), q(5, 4))],
                      "b": q(3, 2), "c": 2}),
        HandleSlide(q(1, 2), "c", {"b": 1}),  # cancels the first over F2
        DriftSegment(q(1, 2), q(3, 4),
                     {"a": [(q(1, 2), q(5, 4)), (q(3, 4), q(3, 2))],
                      "b": q(3, 2), "c": 2}),
        Death(q(3, 4), "b", "a"),
        DriftSegment(q(3, 4), q(7, 8), {"c": 2}),
        Birth(q(7, 8), ("u", 1), ("v", 0), 3),
        DriftSegment(q(7, 8), 1, {"c": 2, "v": 3,
                                  "u": [(q(7, 8), 3), (1, q(7, 2))]}),
    ]
    trace = simulate(cx, items)
    report = check_transitions(trace)
    assert report.ok, report.failures()
    kinds = [e.kind for e in report.entries]
    assert kinds.count("handle_slide") == 2
    assert "death" in kinds and "birth" in kinds
    details = {e.kind: e.detail for e in report.entries}
    assert details["handle_slide"] == "pairing unchanged"
    assert details["death"] == "the collided bar removed"
    assert details["birth"] == "one bar added at the common action"


def test_exit_entry_script():
    cx = FilteredComplex(F2, (0, 4),
                         [("x", 1, 0), ("y", 2, 1), ("z", 3, 0)],
                         {"y": {"x": 1}})
    items = [
        DriftSegment(0, q(1, 4), {"x": [(0, 1), (q(1, 4), 0)],
                                  "y": 2, "z": 3}),
        ExitBelow(q(1, 4), "x"),
        DriftSegment(q(1, 4), q(1, 2), {"y": 2,
                                        "z": [(q(1, 4), 3), (q(1, 2), 4)]}),
        ExitAbove(q(1, 2), "z"),
        DriftSegment(q(1, 2), q(3, 4), {"y": 2}),
        EntryBelow(q(3, 4), "w", 0, couplings={"y": 1}),
        DriftSegment(q(3, 4), q(7, 8), {"y": 2,
                                        "w": [(q(3, 4), 0), (q(7, 8), q(1, 2))]}),
        EntryAbove(q(7, 8), "v", 1, boundary={"w": 1}),
        DriftSegment(q(7, 8), 1, {"y": 2, "w": q(1, 2),
                                  "v": [(q(7, 8), 4), (1, q(7, 2))]}),
    ]
    trace = simulate(cx, items)
    report = check_transitions(trace)
    assert report.ok, report.failures()
    kinds = {e.kind for e in report.entries if e.kind not in
             ("continuity", "crossing")}
    assert kinds == {"exit_below", "exit_above", "entry_below", "entry_above"}


def _hold(t0, t1):
    return DriftSegment(t0, t1, {"a": 1, "b": q(3, 2), "c": 2})


def test_simultaneous_events_rejected():
    cx = _pair_complex()
    with pytest.raises(SimultaneousBifurcations):
        simulate(cx, [_hold(0, q(1, 2)),
                      HandleSlide(q(1, 2), "c", {"b": 1}),
                      HandleSlide(q(1, 2), "c", {"b": 1})])


def test_death_requires_canceling_position():
    cx = FilteredComplex(F2, (0, INF),
                         [("x1", 1, 0), ("x2", q(5, 4), 0), ("y", 2, 1)],
                         {"y": {"x1": 1, "x2": 1}})
    with pytest.raises(EventPreconditionViolated):
        simulate(cx, [
            DriftSegment(0, q(1, 2), {"x1": 1, "x2": q(5, 4),
                                      "y": [(0, 2), (q(1, 2), q(5, 4))]}),
            Death(q(1, 2), "y", "x2"),
        ])


def test_death_requires_action_merge():
    cx = _pair_complex()
    # actions never meet: the death is rejected
    with pytest.raises(EventPreconditionViolated):
        simulate(cx, [_hold(0, q(1, 2)), Death(q(1, 2), "b", "a")])


def test_unclaimed_gap_close_rejected():
    cx = _pair_complex()
    # the b->a gap hits zero at the segment end but a slide, not a death,
    # follows
    with pytest.raises(ActionIncrease):
        simulate(cx, [
            DriftSegment(0, q(1, 2), {"a": [(0, 1), (q(1, 2), q(3, 2))],
                                      "b": q(3, 2), "c": 2}),
            HandleSlide(q(1, 2), "c", {"b": 1}),
        ])


def test_gap_crossing_mid_segment_rejected():
    cx = _pair_complex()
    with pytest.raises(ActionIncrease):
        simulate(cx, [
            DriftSegment(0, 1, {"a": [(0, 1), (1, q(7, 4))],
                                "b": q(3, 2), "c": 2}),
        ])


def test_birth_collision_rejected():
    cx = _pair_complex()
    with pytest.raises(NonGenericCrossing):
        simulate(cx, [_hold(0, q(1, 2)),
                      Birth(q(1, 2), ("u", 1), ("v", 0), 2)])


def test_tie_at_event_rejected():
    cx = FilteredComplex(F2, (0, INF), [("p", 1, 0), ("r", q(3, 2), 0)], {})
    with pytest.raises(NonGenericCrossing):
        simulate(cx, [
            DriftSegment(0, q(1, 2), {"p": 1,
                                      "r": [(0, q(3, 2)), (q(1, 2), 1)]}),
            HandleSlide(q(1, 2), "r", {"p": 1}),
        ])


def test_coinciding_trajectories_rejected():
    cx = FilteredComplex(F2, (0, INF), [("p", 1, 0), ("r", 1, 0)], {})
    with pytest.raises(NonGenericCrossing):
        simulate(cx, [DriftSegment(0, 1, {"p": 1, "r": 1})])


def test_exit_below_away_from_bottom_rejected():
    cx = _pair_complex()
    with pytest.raises(EventPreconditionViolated):
        simulate(cx, [_hold(0, q(1, 2)), ExitBelow(q(1, 2), "a")])


def test_slide_must_preserve_action_order():
    cx = _pair_complex()
    # target "b" (action 3/2) absorbing "c" (action 2) breaks the order
    with pytest.raises(EventPreconditionViolated):
        simulate(cx, [_hold(0, q(1, 2)), HandleSlide(q(1, 2), "b", {"c": 1})])


def test_tampered_trace_fails_checker():
    cx = _pair_complex()
    items = [
        DriftSegment(0, q(1, 2), {"a": 1, "b": q(3, 2), "c": 2}),
        HandleSlide(q(1, 2), "c", {"b": 1}),
        DriftSegment(q(1, 2), 1, {"a": 1, "b": q(3, 2), "c": 2}),
    ]
    trace = simulate(cx, items)
    assert check_transitions(trace).ok
    rec = trace.events[0]
    sample = trace.samples[rec.post_sample]
    sample.pairs = frozenset({("a", None), ("b", None), ("c", None)})
    report = check_transitions(trace)
    assert not report.ok
    assert any(e.kind == "handle_slide" and not e.ok for e in report.entries)


def test_vineyard_rows_shape_and_ids():
    cx = _pair_complex()
    trace = simulate(cx, [
        DriftSegment(0, 1, {"a": [(0, 1), (1, q(5, 4))],
                            "b": q(3, 2), "c": 2}),
    ])
    rows = vineyard_rows(trace)
    ids = {r[1] for r in rows}
    assert all(i.startswith("b") and len(i) == 4 for i in ids)
    # a persisting bar keeps its id from sample to sample
    by_id = {}
    for t, bar_id, start, end, degree in rows:
        by_id.setdefault(bar_id, []).append((t, start, end, degree))
    assert any(len(v) > 1 for v in by_id.values())


def test_drift_speed_audit():
    items = [DriftSegment(0, 1, {"a": [(0, 1), (1, q(3, 2))],
                                 "b": q(3, 2), "c": 2})]
    ok_report = drift_speed_audit(items, 1)  # |slope| = 1/2 < 1
    assert ok_report.ok
    bad_report = drift_speed_audit(items, q(1, 2))
    assert not bad_report.ok
    flagged = bad_report.flags()
    assert flagged and flagged[0].subject == "a"
    with pytest.raises(ValidationError):
        drift_speed_audit(items, -1)


def test_random_timelines_all_pass():
    for seed in range(40):
        rng = random.Random(seed)
        field = rng.choice([F2, FP(5), QQ])
        initial, items = random_timeline(rng, field)
        trace = simulate(initial, items)
        report = check_transitions(trace)
        assert report.ok, (seed, field.tag, report.failures())
