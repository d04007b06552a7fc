import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from borsuk.gf2 import BitMatrix, BitVector, nullspace, rank, rref, solve

from support import naive_rank


def matrices(max_rows=12, max_cols=12):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_bitvector_invariants():
    v = BitVector.from_list([1, 0, 1])
    assert v.bits == 0b101
    assert (v ^ v).is_zero()
    with pytest.raises(ValueError):
        BitVector(2, 0b100)


def test_rref_identity():
    res = rref(BitMatrix.identity(2))
    assert res.rank == 2 and res.pivots == (0, 1)


def test_rref_duplicate_rows():
    res = rref(BitMatrix.from_lists([[1, 1], [1, 1]]))
    assert res.rank == 1 and res.pivots == (0,)


def test_rref_empty():
    assert rref(BitMatrix(0, 0, ())).rank == 0
    assert rref(BitMatrix(0, 5, ())).rank == 0


def test_rref_random_20x30_against_naive():
    rng = random.Random(7)
    for _ in range(20):
        rows = [[rng.randint(0, 1) for _ in range(30)] for _ in range(20)]
        assert rank(BitMatrix.from_lists(rows)) == naive_rank(rows)


@given(matrices())
def test_rank_matches_naive(rows):
    assert rank(BitMatrix.from_lists(rows)) == naive_rank(rows)


@given(matrices())
def test_rref_structure(rows):
    m = BitMatrix.from_lists(rows)
    res = rref(m)
    assert list(res.pivots) == sorted(set(res.pivots))
    for p in res.pivots:
        assert sum(res.matrix.column(p).to_list()) == 1
    # row space preserved: stacking either on the other adds no rank
    stacked = BitMatrix.from_lists(rows + res.matrix.to_lists())
    assert rank(stacked) == res.rank == naive_rank(res.matrix.to_lists())


def test_solve_identity():
    res = solve(BitMatrix.identity(3), BitVector.from_list([1, 0, 1]))
    assert res.x.to_list() == [1, 0, 1]
    assert res.nullspace == ()


def test_solve_free_variable_zero():
    res = solve(BitMatrix.from_lists([[1, 1]]), BitVector.from_list([1]))
    assert res.x.to_list() == [1, 0]
    assert [v.to_list() for v in res.nullspace] == [[1, 1]]


def test_solve_inconsistent_has_certificate():
    a = BitMatrix.from_lists([[1, 1], [1, 1]])
    b = BitVector.from_list([1, 0])
    res = solve(a, b)
    assert res.x is None
    y = res.certificate
    assert a.vecmat(y).is_zero() and y.dot(b) == 1
    assert res.inconsistent_row is not None


def test_solve_random_consistent_16x24():
    rng = random.Random(11)
    for _ in range(25):
        a = BitMatrix.from_lists([[rng.randint(0, 1) for _ in range(24)] for _ in range(16)])
        x0 = BitVector.from_list([rng.randint(0, 1) for _ in range(24)])
        res = solve(a, a.matvec(x0))
        assert res.x is not None
        assert a.matvec(res.x) == a.matvec(x0)


@given(matrices(), st.data())
def test_solve_round_trip_and_nullspace(rows, data):
    a = BitMatrix.from_lists(rows)
    x0 = BitVector.from_list(data.draw(st.lists(st.integers(0, 1), min_size=a.cols, max_size=a.cols)))
    res = solve(a, a.matvec(x0))
    assert a.matvec(res.x) == a.matvec(x0)
    for v in res.nullspace:
        assert a.matvec(v).is_zero()
    assert len(res.nullspace) == a.cols - rank(a)
    if res.nullspace:
        assert rank(BitMatrix.from_rows(res.nullspace, a.cols)) == len(res.nullspace)


@given(matrices(), st.data())
def test_solve_certificate_or_solution(rows, data):
    a = BitMatrix.from_lists(rows)
    b = BitVector.from_list(data.draw(st.lists(st.integers(0, 1), min_size=a.rows, max_size=a.rows)))
    res = solve(a, b)
    if res.x is not None:
        assert a.matvec(res.x) == b
    else:
        assert a.vecmat(res.certificate).is_zero()
        assert res.certificate.dot(b) == 1


def test_nullspace_helper():
    a = BitMatrix.from_lists([[1, 0, 1], [0, 1, 1]])
    (v,) = nullspace(a)
    assert v.to_list() == [1, 1, 1]
