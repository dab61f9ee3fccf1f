import numpy as np
import pytest


def straight_orbit_stopping_time(n, cap=10**6):
    """Plain loop over the piecewise map; kept free of package imports."""
    x = n
    for p in range(1, cap + 1):
        x = x // 2 if x % 2 == 0 else (3 * x + 1) // 2
        if x == 1:
            return p
    return None


def dense_adjacency(n, lo):
    """0/1 numpy matrix on labels lo..n written straight from the definition."""
    dim = n - lo + 1
    a = np.zeros((dim, dim), dtype=np.int64)
    for i in range(lo, n + 1):
        j = i // 2 if i % 2 == 0 else (3 * i + 1) // 2
        if lo <= j <= n:
            a[i - lo, j - lo] = 1
    return a


def dense_index(a):
    """Smallest k >= 1 with a**k == 0 by brute-force dense powers, else None."""
    p = a.copy()
    for k in range(1, a.shape[0] + 1):
        if not p.any():
            return k
        p = p @ a
    return None


@pytest.fixture
def oracle():
    class O:
        stopping_time = staticmethod(straight_orbit_stopping_time)
        dense = staticmethod(dense_adjacency)
        index = staticmethod(dense_index)
    return O


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    state = {}

    def note(label, detail=""):
        state["label"], state["detail"] = label, detail

    yield note
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    _ACCEPTANCE_LINES.append(
        f"{'PASS' if ok else 'FAIL'}  {state.get('label', request.node.name)}  {state.get('detail', '')}".rstrip()
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
