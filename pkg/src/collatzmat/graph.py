"""Successor-array digraphs of the truncated shortcut map.

``Full`` is the graph on ``{1..n}``; ``CSUB`` drops vertices 1 and 2 and
keeps the edges among ``{3..n}``. Every vertex has out-degree 0 or 1, so
the whole graph is one integer array indexed by ``label - offset``.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ._scan import CYCLE_ENTRY, depth_scan

__all__ = [
    "GraphVariant",
    "CollatzDigraph",
    "CycleWitness",
    "CycleExists",
    "NilpotencyCertificate",
    "RangeReport",
    "build_digraph",
    "detect_cycle",
    "topological_certificate",
    "depth",
    "depths",
    "verify_range",
]


class GraphVariant(enum.Enum):
    FULL = "full"
    CSUB = "csub"

    @property
    def offset(self) -> int:
        return 1 if self is GraphVariant.FULL else 3


@dataclass(frozen=True)
class CycleWitness:
    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


class CycleExists(Exception):
    def __init__(self, witness: CycleWitness):
        self.witness = witness
        super().__init__(f"directed cycle of length {witness.length}: {list(witness.vertices)}")


@dataclass(frozen=True, eq=False)
class CollatzDigraph:
    """Functional digraph; ``succ[k]`` is the successor label of vertex
    ``k + offset`` or ``-1`` when there is none."""

    n: int
    variant: GraphVariant
    succ: np.ndarray = field(repr=False)

    @property
    def offset(self) -> int:
        return self.variant.offset

    @property
    def vertices(self) -> range:
        return range(self.offset, self.n + 1)

    def __len__(self) -> int:
        return self.n - self.offset + 1

    def __contains__(self, label: int) -> bool:
        return self.offset <= label <= self.n

    def successor(self, label: int) -> Optional[int]:
        if label not in self:
            raise KeyError(label)
        s = int(self.succ[label - self.offset])
        return None if s < 0 else s

    def edges(self) -> Iterator[Tuple[int, int]]:
        for k in np.flatnonzero(self.succ >= 0):
            yield int(k) + self.offset, int(self.succ[k])

    def with_edge(self, source: int, target: Optional[int]) -> "CollatzDigraph":
        """Copy with the out-edge of ``source`` replaced (``None`` removes it)."""
        if source not in self or (target is not None and target not in self):
            raise KeyError((source, target))
        succ = self.succ.copy()
        succ[source - self.offset] = -1 if target is None else target
        return CollatzDigraph(self.n, self.variant, succ)

    def is_collatz(self) -> bool:
        """True when every edge is ``(i, f(i))`` and no admissible edge is missing."""
        return bool(np.array_equal(self.succ, build_digraph(self.n, self.variant).succ))

    def storage_successors(self) -> np.ndarray:
        """Successor array in 0-based storage indices, ``-1`` for none."""
        return np.where(self.succ >= 0, self.succ - self.offset, -1).astype(np.int64)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CollatzDigraph):
            return NotImplemented
        return (self.n, self.variant) == (other.n, other.variant) and np.array_equal(
            self.succ, other.succ
        )


@dataclass(frozen=True)
class NilpotencyCertificate:
    order: Tuple[int, ...]
    longest_path_len: int

    @property
    def index(self) -> int:
        return self.longest_path_len + 1


@dataclass(frozen=True)
class RangeReport:
    n_max: int
    acyclic: bool
    max_depth: int
    deepest_vertex: int
    elapsed_ms: float = field(compare=False)

    @property
    def index(self) -> int:
        return self.max_depth + 1


def build_digraph(n: int, variant: GraphVariant = GraphVariant.FULL) -> CollatzDigraph:
    variant = GraphVariant(variant)
    lo = variant.offset
    if n < max(lo, 1):
        raise ValueError(f"n={n} is too small for the {variant.value} variant")
    labels = np.arange(lo, n + 1, dtype=np.int64)
    image = np.where(labels % 2 == 0, labels // 2, (3 * labels + 1) // 2)
    succ = np.where((image >= lo) & (image <= n), image, -1)
    return CollatzDigraph(n, variant, succ)


def _scan(g: CollatzDigraph) -> np.ndarray:
    return depth_scan(g.storage_successors())


def _cycle_through(g: CollatzDigraph, start: int) -> CycleWitness:
    cyc = [start]
    v = g.successor(start)
    while v != start:
        cyc.append(v)
        v = g.successor(v)
    k = cyc.index(min(cyc))
    return CycleWitness(tuple(cyc[k:] + cyc[:k]))


def detect_cycle(g: CollatzDigraph) -> Optional[CycleWitness]:
    """Return the cycle with the smallest minimal vertex, listed from that
    vertex, or ``None`` if ``g`` is acyclic."""
    d = _scan(g)
    entries = np.flatnonzero(d == CYCLE_ENTRY)
    if entries.size == 0:
        return None
    cycles = [_cycle_through(g, int(k) + g.offset) for k in entries]
    return min(cycles, key=lambda c: c.vertices[0])


def depths(g: CollatzDigraph) -> np.ndarray:
    """Depth of every vertex (storage order). Raises CycleExists."""
    d = _scan(g)
    if (d < 0).any():
        raise CycleExists(detect_cycle(g))
    return d


def depth(g: CollatzDigraph, i: int) -> int:
    """Number of edges followed from ``i`` before the chain leaves the graph."""
    seen = set()
    v: Optional[int] = i
    count = -1
    while v is not None:
        if v in seen:
            raise CycleExists(_cycle_through(g, v))
        seen.add(v)
        count += 1
        v = g.successor(v)
    return count


def topological_certificate(g: CollatzDigraph) -> NilpotencyCertificate:
    d = depths(g)
    labels = np.arange(g.offset, g.n + 1)
    # deeper vertices first: an edge always drops depth by exactly one
    order = labels[np.lexsort((labels, -d.astype(np.int64)))]
    return NilpotencyCertificate(tuple(int(v) for v in order), int(d.max()))


def deepest(g: CollatzDigraph) -> Tuple[int, int]:
    """(max depth, smallest vertex attaining it)."""
    d = depths(g)
    k = int(np.argmax(d))
    return int(d[k]), k + g.offset


def verify_range(n_max: int) -> RangeReport:
    """Check that the C-subgraph on ``{3..n_max}`` is acyclic.

    By nesting, this covers every ``3 <= n <= n_max`` at once.
    Raises :class:`CycleExists` with a witness otherwise.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    t0 = time.perf_counter()
    g = build_digraph(n_max, GraphVariant.CSUB)
    max_depth, vertex = deepest(g)
    elapsed = (time.perf_counter() - t0) * 1e3
    return RangeReport(n_max, True, max_depth, vertex, elapsed)


def successor_map(g: CollatzDigraph) -> Dict[int, int]:
    return dict(g.edges())


def to_dot(g: CollatzDigraph) -> str:
    """DOT text with vertices ascending and one ``i -> j`` line per edge."""
    name = "Gamma_%d" % g.n if g.variant is GraphVariant.FULL else "C_%d" % g.n
    lines: List[str] = [f'digraph "{name}" {{']
    lines += [f"  {v};" for v in g.vertices]
    lines += [f"  {i} -> {j};" for i, j in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"

