"""Depth scan over a successor array (out-degree <= 1).

``succ[v]`` is the storage index of the successor of ``v`` or ``-1``.
The scan is iterative with three-state marking, so each vertex is touched
a constant number of times and chain length never limits recursion depth.
Compiled with numba when it is importable; ``depth_scan.py_func`` is the
plain-Python reference.
"""

import numpy as np

UNVISITED = -1
IN_PROGRESS = -2
CYCLIC = -3  # on a cycle or leads into one
CYCLE_ENTRY = -4  # the in-progress vertex that closed a cycle

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        def wrap(fn):
            fn.py_func = fn
            return fn
        return wrap


@njit(cache=True)
def depth_scan(succ):
    n = succ.shape[0]
    depth = np.full(n, UNVISITED, dtype=np.int32)
    stack = np.empty(n, dtype=np.int64)
    for v in range(n):
        if depth[v] != UNVISITED:
            continue
        top = 0
        u = v
        while u >= 0 and depth[u] == UNVISITED:
            depth[u] = IN_PROGRESS
            stack[top] = u
            top += 1
            u = succ[u]
        if u < 0:
            base = -1
        elif depth[u] >= 0:
            base = depth[u]
        else:
            base = CYCLIC
        if u >= 0 and depth[u] == IN_PROGRESS:
            for t in range(top):
                depth[stack[t]] = CYCLIC
            depth[u] = CYCLE_ENTRY
        elif base == CYCLIC:
            for t in range(top):
                depth[stack[t]] = CYCLIC
        else:
            d = base
            while top > 0:
                top -= 1
                d += 1
                depth[stack[top]] = d
    return depth
