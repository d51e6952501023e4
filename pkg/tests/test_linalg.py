from fractions import Fraction

from hypothesis import given, settings, strategies as st

from superw22.linalg import Matrix, nullspace, rank, span_rank
from superw22.scalar import Scalar


def test_identity_has_trivial_nullspace():
    assert nullspace(Matrix.identity(3)) == []
    assert rank(Matrix.identity(4)) == 4


def test_rank_one_nullspace():
    (v,) = nullspace(Matrix.from_dense([[1, 1], [2, 2]]))
    assert v[0] == -v[1] and v[0] != 0


def test_zero_row_gives_full_space():
    basis = nullspace(Matrix.from_dense([[0, 0]]))
    assert len(basis) == 2
    assert span_rank(basis, 2).rank == 2


def test_zero_matrix_rank():
    assert rank(Matrix.zeros(3, 5)) == 0


def test_hand_rank():
    assert rank(Matrix.from_dense([[1, 2], [2, 4], [0, 1]])) == 2


def test_complex_entries():
    i = Scalar(0, 1)
    m = Matrix.from_dense([[1, i], [i, -1]])
    assert rank(m) == 1
    (v,) = nullspace(m)
    assert m.matvec(v) == [0, 0]


def test_deterministic_pivots():
    m = Matrix.from_dense([[0, 1, 1, 0], [0, 2, 2, 1]])
    assert nullspace(m) == nullspace(Matrix.from_dense([[0, 2, 2, 1], [0, 1, 1, 0]]))


entries = st.integers(-3, 3).map(Fraction)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 6), st.data())
def test_rank_nullity(rows, cols, data):
    dense = [[data.draw(entries) for _ in range(cols)] for _ in range(rows)]
    m = Matrix.from_dense(dense, cols)
    basis = nullspace(m)
    assert rank(m) + len(basis) == cols
    for v in basis:
        assert all(x == 0 for x in m.matvec(v))
    assert span_rank(basis, cols).rank == len(basis)
