"""Filtered complexes: construction invariants, windows, boundaries."""

import random
from fractions import Fraction

import pytest

from chordbars import (F2, INF, QQ, FilteredComplex, FP, Generator,
                       random_complex)
from chordbars.complexes import as_action
from chordbars.errors import (ActionIncrease, ActionOutsideWindow,
                              DegreeMismatch, DuplicateId, ForeignGenerator,
                              NotSquareZero, ValidationError)

q = Fraction


def _pair(field=F2):
    return FilteredComplex(field, (0, INF),
                           [("x", 1, 0), ("y", q(3, 2), 1)],
                           {"y": {"x": 1}})


def test_as_action():
    assert as_action("3/4") == q(3, 4)
    assert as_action(2) == 2
    assert as_action("inf", allow_inf=True) == INF
    with pytest.raises(ValidationError):
        as_action(0.5)
    with pytest.raises(ValidationError):
        as_action(INF)
    with pytest.raises(ValidationError):
        as_action("inf")
    with pytest.raises(ValidationError):
        as_action(True)


def test_generators_sorted_and_window():
    cx = _pair()
    assert [g.id for g in cx.generators] == ["x", "y"]
    assert cx.window == (0, INF)
    assert cx.generator("x").action == 1
    assert cx.degrees() == [0, 1]
    assert len(cx) == 2
    with pytest.raises(ForeignGenerator):
        cx.generator("zebra")


def test_construction_rejections():
    with pytest.raises(DuplicateId):
        FilteredComplex(F2, (0, INF), [("x", 1, 0), ("x", 2, 0)], {})
    with pytest.raises(ActionOutsideWindow):
        FilteredComplex(F2, (1, 4), [("x", 4, 0)], {})
    with pytest.raises(ActionOutsideWindow):
        FilteredComplex(F2, (1, 4), [("x", q(1, 2), 0)], {})
    with pytest.raises(ValidationError):
        FilteredComplex(F2, (3, 3), [], {})
    with pytest.raises(ForeignGenerator):
        FilteredComplex(F2, (0, INF), [("x", 1, 0)], {"w": {"x": 1}})
    with pytest.raises(ForeignGenerator):
        FilteredComplex(F2, (0, INF), [("x", 1, 0)], {"x": {"w": 1}})
    with pytest.raises(DegreeMismatch):
        FilteredComplex(F2, (0, INF), [("x", 1, 0), ("y", 2, 2)],
                        {"y": {"x": 1}})
    with pytest.raises(ActionIncrease):
        FilteredComplex(F2, (0, INF), [("x", 2, 0), ("y", 1, 1)],
                        {"y": {"x": 1}})
    with pytest.raises(ActionIncrease):
        # equal actions are forbidden too: zero-length bars cannot exist
        FilteredComplex(F2, (0, INF), [("x", 1, 0), ("y", 1, 1)],
                        {"y": {"x": 1}})
    with pytest.raises(NotSquareZero):
        FilteredComplex(F2, (0, INF),
                        [("x", 1, 0), ("y", 2, 1), ("z", 3, 2)],
                        {"z": {"y": 1}, "y": {"x": 1}})


def test_zero_coefficients_dropped():
    cx = FilteredComplex(FP(5), (0, INF), [("x", 1, 0), ("y", 2, 1)],
                         {"y": {"x": 5}})
    assert cx.differential_raw("y") == {}


def test_boundary_of_chain():
    cx = FilteredComplex(FP(5), (0, INF),
                         [("x1", 1, 0), ("x2", 2, 0), ("y", 3, 1)],
                         {"y": {"x1": 2, "x2": 3}})
    out = cx.boundary({"y": 2})
    assert {k: v.value for k, v in out.items()} == {"x1": 4, "x2": 1}
    # boundary of a boundary dies
    assert cx.boundary({k: v.value for k, v in out.items()}) == {}


def test_boundary_matrix_shape():
    cx = FilteredComplex(QQ, (0, INF),
                         [("x1", 1, 0), ("x2", 2, 0), ("y", 3, 1)],
                         {"y": {"x1": q(1, 2), "x2": -1}})
    M, rows, cols = cx.boundary_matrix(1)
    assert [g.id for g in rows] == ["x1", "x2"]
    assert [g.id for g in cols] == ["y"]
    assert M == [[q(1, 2)], [q(-1)]]
    assert cx.homology_rank(0) == 1
    assert cx.homology_rank(1) == 0


def test_random_complex_always_valid():
    for seed in range(40):
        rng = random.Random(seed)
        field = rng.choice([F2, FP(5), QQ])
        cx = random_complex(rng, field)
        # construction re-validates everything; also: in-window actions
        a, b = cx.window
        for g in cx.generators:
            assert a <= g.action and (b == INF or g.action < b)
        FilteredComplex(field, cx.window,
                        [(g.id, g.action, g.degree) for g in cx.generators],
                        {g.id: cx.differential_raw(g.id)
                         for g in cx.generators})


def test_generator_sort_key_breaks_ties_by_id():
    cx = FilteredComplex(F2, (0, INF), [("b", 1, 0), ("a", 1, 0)], {})
    assert [g.id for g in cx.generators] == ["a", "b"]
    assert Generator("a", 1, 0).sort_key < Generator("b", 1, 0).sort_key
