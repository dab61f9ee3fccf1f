"""Cross-engine checks, the walk-counting oracle and the mutant harness.

Every check returns a :class:`VerificationReport`; a failing report always
carries a counterexample that reproduces the failure.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from . import graph as gr
from . import matrix as mx
from .core import shortcut_step


@dataclass
class VerificationReport:
    subject: str
    params: Dict[str, Any]
    verdict: str = "pass"
    counterexample: Optional[Dict[str, Any]] = None
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def fail(self, **counterexample: Any) -> "VerificationReport":
        self.verdict = "fail"
        self.counterexample = counterexample
        return self

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"subject": self.subject, "params": self.params, "verdict": self.verdict}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class _timed:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self) -> VerificationReport:
        self._t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc) -> None:
        self.report.elapsed_ms = (time.perf_counter() - self._t0) * 1e3


def _range_params(ns: List[int], **extra: Any) -> Dict[str, Any]:
    return {"n_min": min(ns), "n_max": max(ns), "count": len(ns), **extra}


def check_alves_condition(n_range: Iterable[int], p_max: int) -> VerificationReport:
    """trace(A_n^p) is 2 for even p and 0 for odd p, for every n and p <= p_max."""
    ns = sorted(n_range)
    report = VerificationReport("alves_condition", _range_params(ns, p_max=p_max))
    with _timed(report):
        for n in ns:
            bad = mx.trace_table(n, p_max).first_failure()
            if bad is not None:
                return report.fail(n=n, p=bad.p, trace=bad.trace, expected=bad.expected)
    return report


def check_block_trace_identity(n_range: Iterable[int], p_max: int) -> VerificationReport:
    """trace(A_n^p) == trace(A_2^p) + trace(C_n^p) exactly."""
    ns = sorted(n_range)
    report = VerificationReport("block_trace_identity", _range_params(ns, p_max=p_max))
    with _timed(report):
        a2_traces = [mx.trace(q) for q in mx.powers(mx.build_A(2), p_max)]
        for n in ns:
            if n <= 2:
                raise ValueError("block identity needs n > 2")
            pairs = zip(mx.powers(mx.build_A(n), p_max), mx.powers(mx.build_C(n), p_max))
            for p, (ap, cp) in enumerate(pairs, start=1):
                lhs, rhs_c = mx.trace(ap), mx.trace(cp)
                if lhs != a2_traces[p - 1] + rhs_c:
                    return report.fail(
                        n=n, p=p, trace_A_n=lhs, trace_A_2=a2_traces[p - 1], trace_C_n=rhs_c
                    )
    return report


def check_block_power_formula(n_range: Iterable[int], p_max: int) -> VerificationReport:
    """Lower-left block of A_n^p equals sum_k C^k B A_2^(p-1-k), entrywise."""
    ns = sorted(n_range)
    report = VerificationReport("block_power_formula", _range_params(ns, p_max=p_max))
    with _timed(report):
        for n in ns:
            a = mx.build_A(n)
            blocks = mx.extract_blocks(a)
            for p, ap in enumerate(mx.powers(a, p_max), start=1):
                got = mx.submatrix(ap, range(3, n + 1), range(1, 3))
                want = mx.lower_left_block_formula(blocks, p)
                if got != want:
                    diff = next(
                        (i, j) for i in got.row_labels for j in got.col_labels if got[i, j] != want[i, j]
                    )
                    return report.fail(
                        n=n, p=p, entry=list(diff), power=got[diff], formula=want[diff]
                    )
    return report


def _graph_verdict(g: gr.CollatzDigraph) -> Tuple[bool, Optional[int]]:
    try:
        return True, gr.topological_certificate(g).index
    except gr.CycleExists:
        return False, None


def cross_check_nilpotency(n_range: Iterable[int]) -> VerificationReport:
    """Graph engine (acyclic + longest path) against matrix engine
    (sequential powers + trace criterion) for each C_n."""
    ns = sorted(n_range)
    report = VerificationReport("cross_check_nilpotency", _range_params(ns))
    with _timed(report):
        indices = {}
        for n in ns:
            if n < 3:
                raise ValueError("C_n needs n >= 3")
            acyclic, g_index = _graph_verdict(gr.build_digraph(n, gr.GraphVariant.CSUB))
            c = mx.build_C(n)
            m_index = mx.nilpotency_index_matrix(c)
            tr = mx.trace_nilpotency_check(c)
            if g_index != m_index or acyclic != tr.passed or acyclic != (m_index is not None):
                return report.fail(
                    n=n, graph_acyclic=acyclic, graph_index=g_index,
                    matrix_index=m_index, trace_check=tr.passed,
                )
            indices[n] = m_index
        report.params["indices_sample"] = {str(n): indices[n] for n in ns[:3] + ns[-3:]}
    return report


def walk_count_oracle(n: int, p: int, i: int, j: int) -> int:
    """Number of length-``p`` walks ``i -> j`` in the graph on ``{1..n}``,
    found by following the (unique) successor chain."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"labels must lie in 1..{n}")
    v = i
    for _ in range(p):
        v = shortcut_step(v)
        if v > n:
            return 0
    return int(v == j)


def check_walk_counts(n_max: int, p_max: int) -> VerificationReport:
    """(A_n^p)_ij equals the chain-following count, and every entry is 0/1."""
    report = VerificationReport("walk_count_oracle", {"n_max": n_max, "p_max": p_max})
    with _timed(report):
        for n in range(1, n_max + 1):
            for p, ap in enumerate(mx.powers(mx.build_A(n), p_max), start=1):
                big = next(((i, j, v) for i, j, v in ap.nonzeros() if v > 1), None)
                if big is not None:
                    return report.fail(n=n, p=p, entry=list(big[:2]), value=big[2])
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        want = walk_count_oracle(n, p, i, j)
                        if ap[i, j] != want:
                            return report.fail(n=n, p=p, entry=[i, j], matrix=ap[i, j], oracle=want)
    return report


def mutated_successor(label: int, mutation: Optional[Mapping[int, int]]) -> int:
    if mutation and label in mutation:
        return mutation[label]
    return shortcut_step(label)


def mutated_C(m: int, mutation: Optional[Mapping[int, int]] = None) -> mx.SparseBinaryMatrix:
    """C_m built from the shortcut map with some out-edges overridden."""
    succ = []
    for i in range(3, m + 1):
        j = mutated_successor(i, mutation)
        succ.append(j if 3 <= j <= m else -1)
    return mx.from_successors(m - 2, 3, succ)


def positive_trace_detector(
    n: int, p_max: int, mutation: Optional[Mapping[int, int]] = None
) -> Optional[Tuple[int, int]]:
    """First ``(m, p)`` with ``trace(C_m^p) > 0`` for ``m = 3..n``, ``p = 1..p_max``."""
    if n < 3:
        raise ValueError("n must be >= 3")
    for m in range(3, n + 1):
        for p, cp in enumerate(mx.powers(mutated_C(m, mutation), p_max), start=1):
            if mx.trace(cp) > 0:
                return m, p
            if cp.is_zero():
                break
    return None


@dataclass(frozen=True)
class Mutant:
    """Single-edge corruption of the C-subgraph of size ``n``: the out-edge of
    ``source`` is redirected to ``target``, closing a cycle."""

    n: int
    source: int
    target: int
    cycle_length: int

    @property
    def mutation(self) -> Dict[int, int]:
        return {self.source: self.target}

    def digraph(self) -> gr.CollatzDigraph:
        return gr.build_digraph(self.n, gr.GraphVariant.CSUB).with_edge(self.source, self.target)

    def matrix(self) -> mx.SparseBinaryMatrix:
        return mutated_C(self.n, self.mutation)


def generate_mutants(count: int, n_max: int = 50, seed: int = 0) -> List[Mutant]:
    """Deterministic mutants: pick a chain v0 -> ... -> vk (k >= 1) in CSub
    and send some vj back to vi (i <= j), giving a cycle of length j-i+1."""
    rng = random.Random(seed)
    out: List[Mutant] = []
    seen = set()
    while len(out) < count:
        n = rng.randint(5, n_max)
        g = gr.build_digraph(n, gr.GraphVariant.CSUB)
        starts = [v for v in g.vertices if g.successor(v) is not None]
        chain = [rng.choice(starts)]
        while (nxt := g.successor(chain[-1])) is not None:
            chain.append(nxt)
        j = rng.randrange(1, len(chain))
        i = rng.randrange(j + 1)
        key = (n, chain[j], chain[i])
        if key in seen:
            continue
        seen.add(key)
        out.append(Mutant(n, chain[j], chain[i], j - i + 1))
    return out


def run_mutant(mutant: Mutant) -> Dict[str, Any]:
    """Run all four detectors on ``mutant``; each entry is the detector's
    raw finding (``None`` means it saw nothing wrong)."""
    witness = gr.detect_cycle(mutant.digraph())
    c = mutant.matrix()
    tr = mx.trace_nilpotency_check(c)
    return {
        "cycle": list(witness.vertices) if witness else None,
        "matrix_index": mx.nilpotency_index_matrix(c),
        "trace_check": None if tr.passed else [tr.p, tr.trace_value],
        "positive_trace": positive_trace_detector(mutant.n, mutant.n, mutant.mutation),
    }


def check_mutation_sensitivity(mutants: Iterable[Mutant]) -> VerificationReport:
    mutants = list(mutants)
    report = VerificationReport("mutation_sensitivity", {"mutants": len(mutants)})
    with _timed(report):
        for mu in mutants:
            r = run_mutant(mu)
            caught = (
                r["cycle"] is not None
                and len(r["cycle"]) == mu.cycle_length
                and r["matrix_index"] is None
                and r["trace_check"] is not None
                and r["trace_check"][0] == mu.cycle_length
                and r["positive_trace"] is not None
                and r["positive_trace"][1] == mu.cycle_length
            )
            if not caught:
                return report.fail(n=mu.n, source=mu.source, target=mu.target,
                                   cycle_length=mu.cycle_length, detectors=r)
    return report
