"""Matrix Market coordinate files that keep the row/column labels.

Coordinates are written as labels (so ``C_5``'s single entry reads
``3 5 1``) and the offset is recorded in a ``%% index_offset:`` comment.
A rectangular block with different offsets records ``row_offset`` and
``col_offset`` instead.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import IO, Union

from .matrix import SparseBinaryMatrix

HEADER = "%%MatrixMarket matrix coordinate integer general"


class MatrixMarketError(ValueError):
    pass


def dumps(m: SparseBinaryMatrix) -> str:
    lines = [HEADER]
    if m.row_offset == m.col_offset:
        lines.append(f"%% index_offset: {m.row_offset}")
    else:
        lines.append(f"%% row_offset: {m.row_offset}")
        lines.append(f"%% col_offset: {m.col_offset}")
    lines.append(f"{m.nrows} {m.ncols} {m.nnz}")
    lines += [f"{i} {j} {v}" for i, j, v in m.nonzeros()]
    return "\n".join(lines) + "\n"


def write(m: SparseBinaryMatrix, target: Union[str, Path, IO[str]]) -> None:
    text = dumps(m)
    if isinstance(target, (str, Path)):
        Path(target).write_text(text)
    else:
        target.write(text)


def loads(text: str) -> SparseBinaryMatrix:
    return read(io.StringIO(text))


def read(source: Union[str, Path, IO[str]]) -> SparseBinaryMatrix:
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            return read(fh)
    first = source.readline().strip()
    if first.lower().split()[:4] != ["%%matrixmarket", "matrix", "coordinate", "integer"]:
        raise MatrixMarketError(f"unsupported header: {first!r}")
    offsets = {}
    size = None
    entries = []
    for lineno, line in enumerate(source, start=2):
        line = line.strip()
        if not line:
            continue
        if line.startswith("%"):
            body = line.lstrip("%").strip()
            key, sep, value = body.partition(":")
            if sep and key.strip() in ("index_offset", "row_offset", "col_offset"):
                offsets[key.strip()] = int(value)
            continue
        try:
            fields = [int(tok) for tok in line.split()]
        except ValueError:
            raise MatrixMarketError(f"line {lineno}: expected integers") from None
        if size is None:
            if len(fields) != 3:
                raise MatrixMarketError(f"line {lineno}: bad size line")
            size = fields
        else:
            if len(fields) != 3:
                raise MatrixMarketError(f"line {lineno}: bad entry")
            entries.append(tuple(fields))
    if size is None:
        raise MatrixMarketError("missing size line")
    nrows, ncols, nnz = size
    if len(entries) != nnz:
        raise MatrixMarketError(f"expected {nnz} entries, found {len(entries)}")
    base = offsets.get("index_offset", 1)
    row_offset = offsets.get("row_offset", base)
    col_offset = offsets.get("col_offset", base)
    try:
        return SparseBinaryMatrix.from_entries(nrows, ncols, entries, row_offset, col_offset)
    except ValueError as exc:
        raise MatrixMarketError(str(exc)) from None
