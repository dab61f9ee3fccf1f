"""Exact sparse integer matrices for ``A_n``, ``B_n`` and ``C_n``.

This is the oracle engine: products are exact Python integers, rows are
sparse dicts, and the public API speaks row/column *labels* (``1..n`` for
``A_n``, ``3..n`` for ``C_n``). Storage is 0-based with the offset applied
at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .core import shortcut_step

Row = Dict[int, int]


class ShapeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SparseBinaryMatrix:
    """Sparse matrix with non-negative integer entries.

    ``rows[r]`` maps storage column index to a non-zero value. A square
    matrix with equal row and column offsets exposes ``dim`` and
    ``index_offset``.
    """

    nrows: int
    ncols: int
    row_offset: int
    col_offset: int
    rows: Tuple[Row, ...]

    @classmethod
    def from_entries(
        cls,
        nrows: int,
        ncols: int,
        entries: Iterable[Tuple[int, int, int]],
        row_offset: int = 1,
        col_offset: Optional[int] = None,
    ) -> "SparseBinaryMatrix":
        """Build from ``(row_label, col_label, value)`` triples."""
        col_offset = row_offset if col_offset is None else col_offset
        rows: List[Row] = [{} for _ in range(nrows)]
        for i, j, v in entries:
            r, c = i - row_offset, j - col_offset
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ShapeError(f"label ({i}, {j}) outside the matrix")
            if v < 0:
                raise ValueError("entries must be non-negative")
            if v:
                rows[r][c] = rows[r].get(c, 0) + v
        return cls(nrows, ncols, row_offset, col_offset, tuple(rows))

    @classmethod
    def zeros(cls, dim: int, index_offset: int = 1) -> "SparseBinaryMatrix":
        return cls(dim, dim, index_offset, index_offset, tuple({} for _ in range(dim)))

    @classmethod
    def identity(cls, dim: int, index_offset: int = 1) -> "SparseBinaryMatrix":
        return cls(dim, dim, index_offset, index_offset, tuple({k: 1} for k in range(dim)))

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols and self.row_offset == self.col_offset

    @property
    def dim(self) -> int:
        if not self.is_square:
            raise ShapeError("dim is only defined for square matrices")
        return self.nrows

    @property
    def index_offset(self) -> int:
        if self.row_offset != self.col_offset:
            raise ShapeError("row and column offsets differ")
        return self.row_offset

    @property
    def row_labels(self) -> range:
        return range(self.row_offset, self.row_offset + self.nrows)

    @property
    def col_labels(self) -> range:
        return range(self.col_offset, self.col_offset + self.ncols)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        if i not in self.row_labels or j not in self.col_labels:
            raise KeyError(ij)
        return self.rows[i - self.row_offset].get(j - self.col_offset, 0)

    def nonzeros(self) -> Iterator[Tuple[int, int, int]]:
        """``(row_label, col_label, value)`` in row-major label order."""
        for r, row in enumerate(self.rows):
            for c in sorted(row):
                yield r + self.row_offset, c + self.col_offset, row[c]

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                out[r][c] = v
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseBinaryMatrix):
            return NotImplemented
        return (
            (self.nrows, self.ncols, self.row_offset, self.col_offset)
            == (other.nrows, other.ncols, other.row_offset, other.col_offset)
            and self.rows == other.rows
        )

    def __matmul__(self, other: "SparseBinaryMatrix") -> "SparseBinaryMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "SparseBinaryMatrix") -> "SparseBinaryMatrix":
        if (self.nrows, self.ncols, self.row_offset, self.col_offset) != (
            other.nrows, other.ncols, other.row_offset, other.col_offset
        ):
            raise ShapeError("shape or offset mismatch")
        rows = []
        for a, b in zip(self.rows, other.rows):
            row = dict(a)
            for c, v in b.items():
                row[c] = row.get(c, 0) + v
            rows.append(row)
        return SparseBinaryMatrix(self.nrows, self.ncols, self.row_offset, self.col_offset, tuple(rows))


def _truncated_map(lo: int, n: int) -> SparseBinaryMatrix:
    dim = n - lo + 1
    rows: List[Row] = []
    for i in range(lo, n + 1):
        j = shortcut_step(i)
        rows.append({j - lo: 1} if lo <= j <= n else {})
    return SparseBinaryMatrix(dim, dim, lo, lo, tuple(rows))


def build_A(n: int) -> SparseBinaryMatrix:
    """``n x n`` matrix with a 1 at ``(i, f(i))`` whenever ``f(i) <= n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _truncated_map(1, n)


def build_C(n: int) -> SparseBinaryMatrix:
    """Trailing ``(n-2) x (n-2)`` block of ``A_n``, labelled ``3..n``."""
    if n < 3:
        raise ValueError("n must be >= 3")
    return _truncated_map(3, n)


@dataclass(frozen=True)
class BlockDecomposition:
    a2: SparseBinaryMatrix
    b: SparseBinaryMatrix
    c: SparseBinaryMatrix

    def reassemble(self) -> SparseBinaryMatrix:
        n = self.c.nrows + 2
        entries = list(self.a2.nonzeros()) + list(self.b.nonzeros()) + list(self.c.nonzeros())
        return SparseBinaryMatrix.from_entries(n, n, entries, row_offset=1)


def submatrix(a: SparseBinaryMatrix, rows: range, cols: range) -> SparseBinaryMatrix:
    """Block of ``a`` on the given label ranges, keeping those labels."""
    entries = [(i, j, v) for i, j, v in a.nonzeros() if i in rows and j in cols]
    return SparseBinaryMatrix.from_entries(
        len(rows), len(cols), entries, row_offset=rows.start, col_offset=cols.start
    )


def extract_blocks(a: SparseBinaryMatrix) -> BlockDecomposition:
    if not a.is_square or a.index_offset != 1:
        raise ShapeError("expected a square matrix labelled from 1")
    n = a.dim
    if n <= 2:
        raise ShapeError("block decomposition needs n > 2")
    head, tail = range(1, 3), range(3, n + 1)
    if any(submatrix(a, head, tail).rows):
        raise ShapeError("upper-right block is not zero")
    return BlockDecomposition(submatrix(a, head, head), submatrix(a, tail, head), submatrix(a, tail, tail))


def mat_mul(x: SparseBinaryMatrix, y: SparseBinaryMatrix) -> SparseBinaryMatrix:
    if x.ncols != y.nrows or x.col_offset != y.row_offset:
        raise ShapeError(
            f"cannot multiply {x.nrows}x{x.ncols}@{x.col_offset} by {y.nrows}x{y.ncols}@{y.row_offset}"
        )
    yrows = y.rows
    out: List[Row] = []
    for xrow in x.rows:
        acc: Row = {}
        for k, v in xrow.items():
            for j, w in yrows[k].items():
                acc[j] = acc.get(j, 0) + v * w
        out.append(acc)
    return SparseBinaryMatrix(x.nrows, y.ncols, x.row_offset, y.col_offset, tuple(out))


def mat_power(x: SparseBinaryMatrix, p: int) -> SparseBinaryMatrix:
    """``x**p`` by repeated squaring; ``x**0`` is the identity."""
    if p < 0:
        raise ValueError("p must be >= 0")
    result = SparseBinaryMatrix.identity(x.dim, x.index_offset)
    base = x
    while p:
        if p & 1:
            result = mat_mul(result, base)
        p >>= 1
        if p:
            base = mat_mul(base, base)
    return result


def powers(x: SparseBinaryMatrix, p_max: int) -> Iterator[SparseBinaryMatrix]:
    """Yield ``x**1 .. x**p_max`` by sequential products."""
    cur = x
    for p in range(1, p_max + 1):
        if p > 1:
            cur = mat_mul(cur, x)
        yield cur


def trace(x: SparseBinaryMatrix) -> int:
    return sum(row.get(k, 0) for k, row in enumerate(x.rows[: x.dim]))


def nilpotency_index_matrix(x: SparseBinaryMatrix) -> Optional[int]:
    """Smallest ``k >= 1`` with ``x**k == 0``, or ``None`` if ``x**dim != 0``."""
    for k, xk in enumerate(powers(x, x.dim), start=1):
        if xk.is_zero():
            return k
    return None


@dataclass(frozen=True)
class TraceCheck:
    passed: bool
    p: Optional[int] = None
    trace_value: Optional[int] = None


def trace_nilpotency_check(x: SparseBinaryMatrix) -> TraceCheck:
    """Pass iff ``trace(x**p) == 0`` for ``p = 1..dim``."""
    for p, xp in enumerate(powers(x, x.dim), start=1):
        t = trace(xp)
        if t != 0:
            return TraceCheck(False, p, t)
    return TraceCheck(True)


def expected_alves_trace(p: int) -> int:
    return 2 if p % 2 == 0 else 0


@dataclass(frozen=True)
class TraceEntry:
    p: int
    trace: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.trace == self.expected


@dataclass(frozen=True)
class TraceTable:
    n: int
    entries: Tuple[TraceEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def traces(self) -> List[int]:
        return [e.trace for e in self.entries]

    def first_failure(self) -> Optional[TraceEntry]:
        return next((e for e in self.entries if not e.passed), None)


def trace_table(n: int, p_max: int) -> TraceTable:
    """``trace(A_n**p)`` for ``p = 1..p_max`` against the 2/0 pattern."""
    if n < 2 or p_max < 1:
        raise ValueError("need n >= 2 and p_max >= 1")
    entries = tuple(
        TraceEntry(p, trace(ap), expected_alves_trace(p))
        for p, ap in enumerate(powers(build_A(n), p_max), start=1)
    )
    return TraceTable(n, entries)


def lower_left_block_formula(blocks: BlockDecomposition, p: int) -> SparseBinaryMatrix:
    """``sum_{k=0}^{p-1} C^k B A_2^{p-1-k}`` computed directly from the blocks."""
    if p < 1:
        raise ValueError("p must be >= 1")
    total = None
    for k in range(p):
        term = mat_mul(mat_mul(mat_power(blocks.c, k), blocks.b), mat_power(blocks.a2, p - 1 - k))
        total = term if total is None else total + term
    return total


def from_successors(dim: int, index_offset: int, succ: Sequence[int]) -> SparseBinaryMatrix:
    """Adjacency matrix of a functional digraph given successor labels
    (negative for none); used to feed mutated graphs to this engine."""
    entries = [(i, int(s), 1) for i, s in zip(range(index_offset, index_offset + dim), succ) if s >= 0]
    return SparseBinaryMatrix.from_entries(dim, dim, entries, row_offset=index_offset)
