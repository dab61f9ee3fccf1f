import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from collatzmat import matrix as mx
from collatzmat.matrix import SparseBinaryMatrix as SBM

from conftest import dense_adjacency, dense_index


def dense(m):
    return np.array(m.to_dense(), dtype=np.int64)


def test_build_A_examples():
    assert mx.build_A(2).to_dense() == [[0, 1], [1, 0]]
    assert mx.build_A(1).to_dense() == [[0]]
    a4 = mx.build_A(4)
    assert list(a4.nonzeros()) == [(1, 2, 1), (2, 1, 1), (4, 2, 1)]
    assert a4.rows[2] == {}


def test_build_C_examples():
    c3 = mx.build_C(3)
    assert c3.to_dense() == [[0]] and c3.index_offset == 3
    assert list(mx.build_C(5).nonzeros()) == [(3, 5, 1)]
    assert mx.build_C(4).is_zero() and mx.build_C(4).dim == 2


@pytest.mark.parametrize("n", [1, 2, 7, 33])
def test_build_A_matches_definition(n):
    np.testing.assert_array_equal(dense(mx.build_A(n)), dense_adjacency(n, 1))


@pytest.mark.parametrize("n", [3, 8, 33])
def test_build_C_matches_definition(n):
    np.testing.assert_array_equal(dense(mx.build_C(n)), dense_adjacency(n, 3))


def test_label_access():
    c = mx.build_C(10)
    assert c[6, 3] == 1 and c[3, 6] == 0
    with pytest.raises(KeyError):
        c[2, 3]


def test_extract_blocks_examples():
    b4 = mx.extract_blocks(mx.build_A(4))
    assert list(b4.b.nonzeros()) == [(4, 2, 1)]
    assert b4.c.is_zero() and b4.c.dim == 2
    assert b4.a2 == mx.build_A(2)
    b3 = mx.extract_blocks(mx.build_A(3))
    assert b3.b.is_zero() and b3.c.to_dense() == [[0]]
    b5 = mx.extract_blocks(mx.build_A(5))
    assert list(b5.b.nonzeros()) == [(4, 2, 1)]
    assert b5.c == mx.build_C(5)
    with pytest.raises(ValueError):
        mx.extract_blocks(mx.build_A(2))


@pytest.mark.parametrize("n", range(3, 40))
def test_blocks_reassemble(n):
    a = mx.build_A(n)
    blocks = mx.extract_blocks(a)
    assert blocks.c == mx.build_C(n)
    assert (blocks.b.nrows, blocks.b.ncols) == (n - 2, 2)
    assert blocks.reassemble() == a


def test_mat_mul_examples():
    a2 = mx.build_A(2)
    assert mx.mat_mul(a2, a2) == SBM.identity(2)
    z = SBM.zeros(5, 3)
    assert mx.mat_mul(z, mx.build_C(7)) == z
    assert mx.mat_mul(mx.build_C(5), mx.build_C(5)).is_zero()


def test_mat_mul_rejects_mismatch():
    with pytest.raises(ValueError):
        mx.mat_mul(mx.build_A(3), mx.build_C(5))
    with pytest.raises(ValueError):
        mx.mat_mul(mx.build_A(3), mx.build_A(4))


def test_mat_power_examples():
    assert mx.mat_power(mx.build_A(2), 3).to_dense() == [[0, 1], [1, 0]]
    assert mx.mat_power(mx.build_C(10), 5).is_zero()
    assert not mx.mat_power(mx.build_C(10), 4).is_zero()
    assert mx.mat_power(mx.build_C(9), 0) == SBM.identity(7, 3)


def test_trace_examples():
    a2 = mx.build_A(2)
    assert mx.trace(a2) == 0
    assert mx.trace(SBM.identity(6)) == 6
    assert mx.trace(a2 @ a2) == 2


def test_nilpotency_index_examples():
    assert mx.nilpotency_index_matrix(mx.build_C(3)) == 1
    assert mx.nilpotency_index_matrix(mx.build_C(5)) == 2
    assert mx.nilpotency_index_matrix(mx.build_A(4)) is None


@pytest.mark.parametrize("n", range(3, 60))
def test_nilpotency_index_matches_dense(n):
    assert mx.nilpotency_index_matrix(mx.build_C(n)) == dense_index(dense_adjacency(n, 3))


def test_trace_nilpotency_check_examples():
    assert mx.trace_nilpotency_check(mx.build_C(10)).passed
    assert mx.trace_nilpotency_check(mx.build_A(2)) == mx.TraceCheck(False, 2, 2)
    assert mx.trace_nilpotency_check(SBM.zeros(1)).passed


def test_trace_table_examples():
    t = mx.trace_table(2, 4)
    assert t.traces == [0, 2, 0, 2] and t.passed
    t = mx.trace_table(100, 50)
    assert t.traces == [0, 2] * 25 and t.passed
    assert [e.p for e in t.entries] == list(range(1, 51))
    t = mx.trace_table(4, 1)
    assert t.traces == [0] and t.passed


@pytest.mark.parametrize("n", [2, 5, 17, 40])
def test_trace_table_matches_dense_powers(n):
    a = dense_adjacency(n, 1)
    p_max = 2 * n
    want, cur = [], np.eye(n, dtype=np.int64)
    for _ in range(p_max):
        cur = cur @ a
        want.append(int(np.trace(cur)))
    assert mx.trace_table(n, p_max).traces == want


def test_lower_left_block_formula_small():
    a = mx.build_A(6)
    blocks = mx.extract_blocks(a)
    for p in range(1, 7):
        ap = mx.mat_power(a, p)
        assert mx.submatrix(ap, range(3, 7), range(1, 3)) == mx.lower_left_block_formula(blocks, p)


@pytest.mark.parametrize("n", [3, 9, 20, 31])
def test_powers_stay_zero_one(n):
    for ap in mx.powers(mx.build_A(n), 3 * n):
        assert all(v == 1 for _, _, v in ap.nonzeros())


@pytest.mark.parametrize("n", [5, 16, 30])
def test_trace_additivity(n):
    for ap, a2p, cp in zip(mx.powers(mx.build_A(n), 30), mx.powers(mx.build_A(2), 30),
                           mx.powers(mx.build_C(n), 30)):
        assert mx.trace(ap) == mx.trace(a2p) + mx.trace(cp)


small_matrices = st.integers(1, 7).flatmap(
    lambda d: st.lists(
        st.lists(st.integers(0, 3), min_size=d, max_size=d), min_size=d, max_size=d
    )
)


def from_dense(rows, offset=1):
    d = len(rows)
    return SBM.from_entries(
        d, d, [(i + offset, j + offset, v) for i, r in enumerate(rows) for j, v in enumerate(r)],
        row_offset=offset,
    )


@settings(max_examples=200)
@given(small_matrices)
def test_mat_mul_matches_numpy(rows):
    flipped = [list(reversed(r)) for r in rows]
    got = from_dense(rows) @ from_dense(flipped)
    np.testing.assert_array_equal(dense(got), np.array(rows) @ np.array(flipped))


@settings(max_examples=100)
@given(small_matrices, st.integers(0, 6), st.integers(0, 6))
def test_power_law(rows, a, b):
    x = from_dense(rows, offset=3)
    assert mx.mat_power(x, a + b) == mx.mat_power(x, a) @ mx.mat_power(x, b)
    np.testing.assert_array_equal(dense(mx.mat_power(x, a)),
                                  np.linalg.matrix_power(np.array(rows, dtype=object), a).astype(np.int64))


def test_from_entries_validates():
    with pytest.raises(ValueError):
        SBM.from_entries(2, 2, [(3, 1, 1)])
    with pytest.raises(ValueError):
        SBM.from_entries(2, 2, [(1, 1, -1)])
