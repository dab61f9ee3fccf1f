"""Shortcut Collatz map, orbit iteration and trajectory classification.

All values are checked against a 64-bit unsigned range; an odd ``n`` whose
``3n + 1`` does not fit raises :class:`CollatzOverflowError` instead of
silently wrapping (wraparound could fabricate a false cycle).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple, Union

NAT_MAX = 2**64 - 1


class CollatzOverflowError(ArithmeticError):
    """Raised when ``3n + 1`` leaves the checked 64-bit range."""

    def __init__(self, value: int, steps: Tuple[int, ...] = ()):
        self.value = value
        self.steps = steps
        super().__init__(f"3n+1 overflows 64 bits for n={value}")


def _check_nat(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an integer, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    if n > NAT_MAX:
        raise CollatzOverflowError(n)


def shortcut_step(n: int) -> int:
    """Return ``n/2`` for even ``n`` and ``(3n+1)/2`` for odd ``n``."""
    _check_nat(n)
    if n % 2 == 0:
        return n // 2
    if 3 * n + 1 > NAT_MAX:
        raise CollatzOverflowError(n)
    return (3 * n + 1) // 2


def iterate(n: int, k: int) -> int:
    """Apply the shortcut map ``k`` times."""
    if k < 0:
        raise ValueError("k must be non-negative")
    _check_nat(n)
    for _ in range(k):
        n = shortcut_step(n)
    return n


@dataclass(frozen=True)
class Converged:
    total_stopping_time: int

    kind = "converged"


@dataclass(frozen=True)
class CycleDetected:
    entry_offset: int
    period: int

    kind = "cycle"


@dataclass(frozen=True)
class Undecided:
    cap: int

    kind = "undecided"


Classification = Union[Converged, CycleDetected, Undecided]


@dataclass(frozen=True)
class TrajectoryRecord:
    start: int
    steps: Tuple[int, ...]
    classification: Classification

    def __post_init__(self) -> None:
        if not self.steps or self.steps[0] != self.start:
            raise ValueError("steps must begin with the start value")


def total_stopping_time(n: int, cap: int) -> Union[int, Undecided]:
    """Smallest positive ``p <= cap`` with ``f^p(n) == 1``.

    The count is strictly positive, so ``total_stopping_time(1, cap)`` is 2
    (one trip around the 1 -> 2 -> 1 cycle).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    _check_nat(n)
    for p in range(1, cap + 1):
        n = shortcut_step(n)
        if n == 1:
            return p
    return Undecided(cap)


def classify_trajectory(n: int, cap: int) -> TrajectoryRecord:
    """Follow the orbit of ``n`` for at most ``cap`` steps and classify it.

    A repeated value is checked before arrival at 1, so the orbit of 1
    itself is reported as the 2-cycle rather than as converged.
    Overflow propagates as :class:`CollatzOverflowError` with the partial
    orbit attached.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    _check_nat(n)
    steps: List[int] = [n]
    seen = {n: 0}
    x = n
    for k in range(1, cap + 1):
        try:
            x = shortcut_step(x)
        except CollatzOverflowError as exc:
            raise CollatzOverflowError(exc.value, tuple(steps)) from None
        steps.append(x)
        if x in seen:
            first = seen[x]
            return TrajectoryRecord(n, tuple(steps), CycleDetected(first, k - first))
        if x == 1:
            return TrajectoryRecord(n, tuple(steps), Converged(k))
        seen[x] = k
    return TrajectoryRecord(n, tuple(steps), Undecided(cap))
