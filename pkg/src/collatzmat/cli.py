"""Command-line entry point.

Exit status: 0 on success, 1 when a verification fails (a counterexample
is printed), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import graph as gr
from . import matrix as mx
from . import mmio, tables, verify
from .core import (
    CollatzOverflowError,
    Converged,
    CycleDetected,
    classify_trajectory,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_DIM_CAP = 4096


class UsageError(Exception):
    pass


def matrix_dim_cap() -> int:
    raw = os.environ.get("COLLATZ_MATRIX_DIM_CAP")
    if raw is None:
        return DEFAULT_DIM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"COLLATZ_MATRIX_DIM_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError("COLLATZ_MATRIX_DIM_CAP must be positive")
    return cap


def _check_matrix_dim(dim: int) -> None:
    cap = matrix_dim_cap()
    if dim > cap:
        raise UsageError(
            f"matrix dimension {dim} exceeds the oracle cap {cap}; "
            "use the graph engine or set COLLATZ_MATRIX_DIM_CAP"
        )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


def cmd_build(args) -> int:
    low = 1 if args.which == "A" else 3
    _require(args.n >= low, f"--n must be >= {low} for {args.which}")
    if args.format == "dot":
        variant = gr.GraphVariant.FULL if args.which == "A" else gr.GraphVariant.CSUB
        _emit(gr.to_dot(gr.build_digraph(args.n, variant)), args.out)
        return EXIT_OK
    _check_matrix_dim(args.n - low + 1)
    m = mx.build_A(args.n) if args.which == "A" else mx.build_C(args.n)
    if args.format == "mm":
        _emit(mmio.dumps(m), args.out)
    else:
        _emit("".join(" ".join(map(str, row)) + "\n" for row in m.to_dense()), args.out)
    return EXIT_OK


def cmd_trace(args) -> int:
    _require(args.n >= 2, "--n must be >= 2")
    _require(args.pmax >= 1, "--pmax must be >= 1")
    _check_matrix_dim(args.n)
    table = mx.trace_table(args.n, args.pmax)
    _emit(tables.emit_trace_table(table), args.out)
    return EXIT_OK if table.passed else EXIT_FAIL


def cmd_nilpotency(args) -> int:
    _require(args.n >= 3, "--n must be >= 3")
    rows = []
    if args.method in ("graph", "both"):
        g = gr.build_digraph(args.n, gr.GraphVariant.CSUB)
        try:
            cert = gr.topological_certificate(g)
            rows.append(("graph", args.n, "yes", cert.index, ""))
        except gr.CycleExists as exc:
            rows.append(("graph", args.n, "no", "", " ".join(map(str, exc.witness.vertices))))
    if args.method in ("matrix", "both"):
        _check_matrix_dim(args.n - 2)
        c = mx.build_C(args.n)
        index = mx.nilpotency_index_matrix(c)
        rows.append(("matrix", args.n, "no" if index is None else "yes", index or "", ""))
    _emit(tables.csv_text("method,n,nilpotent,index,cycle", rows), args.out)
    nilpotent = all(r[2] == "yes" for r in rows)
    agree = len({r[3] for r in rows}) == 1
    return EXIT_OK if nilpotent and agree else EXIT_FAIL


def cmd_index_table(args) -> int:
    _require(3 <= args.n_min <= args.n_max, "need 3 <= --n-min <= --n-max")
    _require(args.step >= 1, "--step must be >= 1")
    _emit(tables.emit_index_table(args.n_min, args.n_max, args.step), args.out)
    return EXIT_OK


def cmd_verify_range(args) -> int:
    _require(args.n_max >= 3, "--n-max must be >= 3")
    report = verify.VerificationReport("verify_range", {"n_max": args.n_max})
    try:
        rr = gr.verify_range(args.n_max)
    except gr.CycleExists as exc:
        report.fail(n=args.n_max, cycle=list(exc.witness.vertices), length=exc.witness.length)
    else:
        report.params.update(max_depth=rr.max_depth, deepest_vertex=rr.deepest_vertex, index=rr.index)
        report.elapsed_ms = rr.elapsed_ms
    _emit(report.to_json() + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_trajectory(args) -> int:
    _require(args.n >= 1, "--n must be >= 1")
    _require(args.cap >= 1, "--cap must be >= 1")
    try:
        rec = classify_trajectory(args.n, args.cap)
    except CollatzOverflowError as exc:
        raise UsageError(f"overflow: 3n+1 exceeds 64 bits at n={exc.value} "
                         f"after {len(exc.steps) - 1} steps") from None
    cls = rec.classification
    if isinstance(cls, Converged):
        detail = f"total_stopping_time={cls.total_stopping_time}"
    elif isinstance(cls, CycleDetected):
        detail = f"entry_offset={cls.entry_offset},period={cls.period}"
    else:
        detail = f"cap={cls.cap}"
    text = f"start={rec.start}\nclassification={cls.kind}\n{detail}\nsteps=" + " ".join(
        map(str, rec.steps)) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_walks(args) -> int:
    _require(args.n >= 1 and args.p >= 1, "--n and --p must be >= 1")
    _require(1 <= args.source <= args.n and 1 <= args.target <= args.n,
             f"--from/--to must lie in 1..{args.n}")
    _check_matrix_dim(args.n)
    oracle = verify.walk_count_oracle(args.n, args.p, args.source, args.target)
    entry = mx.mat_power(mx.build_A(args.n), args.p)[args.source, args.target]
    _emit(tables.csv_text("n,p,from,to,walks,matrix_entry",
                          [(args.n, args.p, args.source, args.target, oracle, entry)]), args.out)
    return EXIT_OK if oracle == entry else EXIT_FAIL


def self_test_reports() -> List[verify.VerificationReport]:
    reports = [
        verify.check_alves_condition(range(2, 31), 20),
        verify.check_block_trace_identity(range(3, 31), 20),
        verify.check_block_power_formula(range(3, 11), 4),
        verify.cross_check_nilpotency(range(3, 61)),
        verify.check_walk_counts(12, 6),
        verify.check_mutation_sensitivity(verify.generate_mutants(5, 30)),
    ]
    report = verify.VerificationReport("verify_range", {"n_max": 10**5})
    try:
        rr = gr.verify_range(10**5)
        report.elapsed_ms = rr.elapsed_ms
    except gr.CycleExists as exc:
        report.fail(cycle=list(exc.witness.vertices))
    reports.append(report)
    return reports


def cmd_self_test(args) -> int:
    reports = self_test_reports()
    _emit("".join(r.to_json() + "\n" for r in reports), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collatzmat",
        description="Truncated Collatz adjacency matrices: traces, nilpotency, certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--out", help="write output to PATH instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("build", cmd_build, "emit A_n or C_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--which", choices=["A", "C"], default="A")
    p.add_argument("--format", choices=["mm", "dot", "dense"], default="mm")

    p = add("trace", cmd_trace, "trace(A_n^p) table against the 2/0 pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pmax", type=int, required=True)

    p = add("nilpotency", cmd_nilpotency, "nilpotency index of C_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["graph", "matrix", "both"], default="both")

    p = add("index-table", cmd_index_table, "CSV of index(C_n) over a range of n")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--step", type=int, default=1)

    p = add("verify-range", cmd_verify_range, "acyclicity of the C-subgraph up to n-max")
    p.add_argument("--n-max", type=int, required=True)

    p = add("trajectory", cmd_trajectory, "classify the orbit of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=10_000)

    p = add("walks", cmd_walks, "count walks of length p between two labels")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)

    add("self-test", cmd_self_test, "run the quick cross-engine checks")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"collatzmat {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
