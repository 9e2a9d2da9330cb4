"""Barcodes: canonical pairing, the independent definitional engine, table
recovery, and counting identities."""

import random
from fractions import Fraction

import pytest

from chordbars import (F2, FP, INF, QQ, Bar, FilteredComplex, barcode_of,
                       barcode_table_lines, canonical_form, endpoints_at,
                       extract_table, persisting_count, random_complex,
                       recover)
from chordbars.barcodes import barcode_csv_rows, barcode_diagram_lines
from chordbars.errors import EngineMismatch, InconsistentTable

from support import bars_as_tuples, rank_phi

q = Fraction
FIELDS = [F2, FP(5), QQ]


def _crossing_fixture(field, d1, d2):
    return FilteredComplex(field, (0, INF),
                           [("x1", 0, 0), ("x2", q(1, 2), 0),
                            ("y1", 1, 1), ("y2", 2, 1)],
                           {"y1": d1, "y2": d2})


def test_empty_and_single_generator():
    cx = FilteredComplex(F2, (0, INF), [], {})
    assert barcode_of(cx, engine="both").bars == ()
    cx = FilteredComplex(F2, (0, INF), [("c", 2, 1)], {})
    assert bars_as_tuples(barcode_of(cx, engine="both")) == [(2, INF, 1)]


def test_canceling_pair_single_finite_bar():
    cx = FilteredComplex(QQ, (0, 4), [("x", 1, 0), ("y", 2, 1)],
                         {"y": {"x": q(7, 3)}})
    assert bars_as_tuples(barcode_of(cx, engine="both")) == [(1, 2, 0)]


def test_crossing_pairs_frozen():
    # two births then two deaths; the pairing must cross: the later killer
    # takes the earlier birth
    for field, d1 in [(F2, {"x1": 1, "x2": 1}),
                      (FP(5), {"x1": 2, "x2": 3}),
                      (QQ, {"x1": q(1, 2), "x2": -1})]:
        cx = _crossing_fixture(field, d1, {"x1": 1})
        form = canonical_form(cx)
        assert sorted(form.pairs) == [("y1", "x2"), ("y2", "x1")]
        assert form.unpaired == ()
        assert bars_as_tuples(barcode_of(cx, engine="both")) == [
            (0, 2, 0), (q(1, 2), 1, 0)]


def test_nested_pairs_frozen():
    # killers in the same order as births: nested bars, no crossing
    cx = _crossing_fixture(QQ, {"x2": 1}, {"x1": 1})
    form = canonical_form(cx)
    assert sorted(form.pairs) == [("y1", "x2"), ("y2", "x1")]
    cx2 = _crossing_fixture(QQ, {"x1": 1}, {"x2": 1})
    assert sorted(canonical_form(cx2).pairs) == [("y1", "x1"), ("y2", "x2")]
    assert bars_as_tuples(barcode_of(cx2, engine="both")) == [
        (0, 1, 0), (q(1, 2), 2, 0)]


def test_base_change_is_action_preserving():
    for seed in range(30):
        rng = random.Random(seed)
        cx = random_complex(rng, rng.choice(FIELDS), max_generators=12)
        form = canonical_form(cx)
        gens = {qq.id: qq for qq in cx.generators}
        acts = [gens[gid].action for gid in form.order]
        G = form.base_change
        for i in range(len(form.order)):
            for j in range(len(form.order)):
                if G[i][j]:
                    assert acts[i] <= acts[j]


def test_window_top_is_not_a_bar_end():
    # unpaired generators run to infinity even when the window is bounded
    cx = FilteredComplex(F2, (0, 5), [("c", 2, 1)], {})
    assert bars_as_tuples(barcode_of(cx, engine="both")) == [(2, INF, 1)]


def test_table_roundtrip_frozen():
    cx = _crossing_fixture(F2, {"x1": 1, "x2": 1}, {"x1": 1})
    B = barcode_of(cx)
    crit, table = extract_table(B)
    assert crit == [0, q(1, 2), 1, 2]
    assert table == [[1, 1, 1, 0],
                     [0, 1, 0, 0],
                     [0, 0, 0, 0],
                     [0, 0, 0, 0]]
    B2 = recover(crit, table)
    assert sorted((b.start, b.end) for b in B2.bars) == [
        (0, 2), (q(1, 2), 1)]


def test_recover_rejects_inconsistent_tables():
    with pytest.raises(InconsistentTable):
        recover([1, 0], [[0, 0], [0, 0]])
    with pytest.raises(InconsistentTable):
        recover([0, 1], [[0, 0], [0, 0], [0, 0]])
    with pytest.raises(InconsistentTable):
        recover([0, 1], [[0, 0], [-1, 0]])
    with pytest.raises(InconsistentTable):
        recover([0, 1], [[0, 0], [1, 0]])  # alive below its own start
    with pytest.raises(InconsistentTable):
        recover([0, 1], [[0, 1], [0, 0]])  # resurrection


def test_table_roundtrip_random():
    for seed in range(60):
        rng = random.Random(1000 + seed)
        cx = random_complex(rng, rng.choice(FIELDS))
        B = barcode_of(cx)
        crit, table = extract_table(B)
        B2 = recover(crit, table)
        assert sorted((b.start, b.end) for b in B.bars) == \
            sorted((b.start, b.end) for b in B2.bars)


def test_engine_agreement_random():
    for seed in range(60):
        rng = random.Random(2000 + seed)
        cx = random_complex(rng, rng.choice(FIELDS))
        barcode_of(cx, engine="both")  # raises EngineMismatch on failure


def test_persisting_and_endpoint_counts():
    cx = _crossing_fixture(F2, {"x1": 1, "x2": 1}, {"x1": 1})
    B = barcode_of(cx)  # bars [0, 2) and [1/2, 1)
    assert persisting_count(B, q(3, 4)) == 2
    assert persisting_count(B, q(3, 2)) == 1
    assert persisting_count(B, q(3, 4), start_below=q(1, 4)) == 1
    assert persisting_count(B, 0) == 1       # [0, 2) contains its start
    assert persisting_count(B, 1) == 1       # [1/2, 1) is half-open
    assert endpoints_at(B, 1) == 1
    assert endpoints_at(B, 0) == 1
    assert endpoints_at(B, q(1, 2)) == 1
    assert endpoints_at(B, 7) == 0


def test_persisting_count_matches_rank_oracle():
    for seed in range(25):
        rng = random.Random(3000 + seed)
        cx = random_complex(rng, rng.choice(FIELDS), max_generators=10)
        B = barcode_of(cx)
        levels = sorted({g.action for g in cx.generators})
        if not levels:
            continue
        probes = [levels[0] - 1] + [
            v + q(1, 8) for v in levels] + [levels[-1] + 1]
        for c in probes[:4]:
            for s in probes:
                if s < c:
                    continue
                # bars with start < c alive at s: rank of the induced map
                expected = rank_phi(cx, c, s + q(1, 16))
                got = persisting_count(B, s, start_below=c)
                assert got == expected, (seed, c, s)


def test_no_zero_length_bars():
    for seed in range(40):
        rng = random.Random(4000 + seed)
        cx = random_complex(rng, rng.choice(FIELDS))
        for b in barcode_of(cx).bars:
            assert b.is_infinite or b.end > b.start


def test_render_formats():
    cx = _crossing_fixture(F2, {"x1": 1, "x2": 1}, {"x1": 1})
    B = barcode_of(cx)
    assert barcode_table_lines(B) == ["[0, 2) deg 0", "[1/2, 1) deg 0"]
    rows = barcode_csv_rows(B)
    assert rows[0] == ("start", "end", "degree")
    assert ("1/2", "1", "0") in rows
    assert len(barcode_diagram_lines(B, width=30)) == 2
    assert barcode_diagram_lines(
        barcode_of(FilteredComplex(F2, (0, 1), [], {}))) == [
        "(empty barcode)"]
