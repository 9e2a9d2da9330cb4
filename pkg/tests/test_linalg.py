"""Exact elimination: rref, rank, nullspace over all three fields."""

import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from chordbars import F2, FP, QQ
from chordbars.linalg import nullspace, rank, rref, zeros

FIELDS = [F2, FP(5), QQ]


def _mat(F, rows):
    return [[F.coerce(x) for x in r] for r in rows]


def test_rank_frozen():
    M = _mat(QQ, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(M, QQ) == 2
    # the same integer matrix collapses further mod 2
    M2 = _mat(F2, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(M2, F2) == 2
    assert rank(_mat(F2, [[1, 1], [1, 1]]), F2) == 1
    assert rank(zeros(3, 4, QQ), QQ) == 0
    assert rank([], QQ) == 0


def test_rref_pivots_and_form():
    M = _mat(QQ, [[0, 2, 4], [1, 1, 1]])
    R, pivots = rref(M, QQ)
    assert pivots == [0, 1]
    assert R == _mat(QQ, [[1, 0, -1], [0, 1, 2]])


def test_nullspace_frozen():
    M = _mat(QQ, [[1, 2, 3], [2, 4, 6]])
    basis = nullspace(M, QQ, ncols=3)
    assert len(basis) == 2
    # an empty matrix needs its width spelled out
    assert len(nullspace([], QQ, ncols=4)) == 4


def _apply(M, v, F):
    return [_dot(row, v, F) for row in M]


def _dot(row, v, F):
    acc = F.zero_raw
    for a, b in zip(row, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


@st.composite
def matrices(draw):
    F = draw(st.sampled_from(FIELDS))
    nrows = draw(st.integers(1, 5))
    ncols = draw(st.integers(1, 5))
    M = [[F.coerce(draw(st.integers(-6, 6))) for _ in range(ncols)]
         for _ in range(nrows)]
    return F, M


@settings(max_examples=120)
@given(matrices())
def test_rank_nullity(fm):
    F, M = fm
    ncols = len(M[0])
    basis = nullspace(M, F, ncols=ncols)
    assert rank(M, F) + len(basis) == ncols
    for v in basis:
        assert all(x == F.zero_raw for x in _apply(M, v, F))
    # basis vectors are independent
    assert rank(basis, F) == len(basis) if basis else True


@settings(max_examples=80)
@given(matrices())
def test_rref_idempotent(fm):
    F, M = fm
    R, pivots = rref(M, F)
    R2, pivots2 = rref(R, F)
    assert R == R2 and pivots == pivots2
    assert rank(M, F) == len(pivots)


def test_fraction_exactness():
    # a pathological-for-floats matrix stays exact
    M = [[Fraction(1, 10 ** k) for k in range(1, 5)]]
    assert rank(M, QQ) == 1
    basis = nullspace(M, QQ, ncols=4)
    assert len(basis) == 3
    for v in basis:
        assert _dot(M[0], v, QQ) == 0


def test_seeded_random_consistency():
    rng = random.Random(42)
    for _ in range(50):
        F = rng.choice(FIELDS)
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        M = [[F.random_raw(rng) for _ in range(m)] for _ in range(n)]
        assert rank(M, F) + len(nullspace(M, F, ncols=m)) == m
