"""Delimited text emitters (``\\n`` line endings, no trailing separators)."""

from __future__ import annotations

from typing import Iterable, Iterator, List, Tuple

from . import graph as gr
from .matrix import TraceTable


def index_rows(n_min: int, n_max: int, step: int = 1) -> Iterator[Tuple[int, int, int]]:
    """``(n, index(C_n), deepest_vertex)`` for ``n = n_min, n_min+step, ...``;
    ties for the deepest vertex go to the smallest label."""
    if not 3 <= n_min <= n_max:
        raise ValueError("need 3 <= n_min <= n_max")
    if step < 1:
        raise ValueError("step must be >= 1")
    for n in range(n_min, n_max + 1, step):
        d, v = gr.deepest(gr.build_digraph(n, gr.GraphVariant.CSUB))
        yield n, d + 1, v


def csv_text(header: str, rows: Iterable[Iterable[object]]) -> str:
    lines: List[str] = [header]
    lines += [",".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def emit_index_table(n_min: int, n_max: int, step: int = 1) -> str:
    return csv_text("n,index,deepest_vertex", index_rows(n_min, n_max, step))


def emit_trace_table(table: TraceTable) -> str:
    rows = ((e.p, e.trace, e.expected, "pass" if e.passed else "fail") for e in table.entries)
    return csv_text("p,trace,expected,verdict", rows)
