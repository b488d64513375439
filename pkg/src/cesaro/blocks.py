"""Geometric partition of the positive integers for a base alpha > 1.

Block j is the set of integers in [alpha^(j-1), alpha^j).  Its left
boundary is iota_j = ceil(alpha^(j-1)), its cardinality is the weight
w_j = iota_(j+1) - iota_j, and w_j = 0 exactly when the block is empty
(which happens for small j when alpha is close to 1).

Powers are formed by repeated multiplication in double precision.  Before
the ceiling is taken, a value within relative 1e-12 of an integer is
snapped to that integer, so bases whose powers are mathematically integral
(2, 3, 10, ...) produce exact boundaries instead of off-by-one blocks.
Boundaries are cached and monotonicity-repaired, and are only exposed
while they fit a signed 64-bit integer.
"""

from __future__ import annotations

import math
import operator
import threading
from bisect import bisect_right

from .errors import HorizonError, ParameterError

_MIN_ALPHA_EXCESS = 1e-12
_SNAP_REL = 1e-12
_INT64_MAX = 2**63 - 1


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 1.0 + _MIN_ALPHA_EXCESS:
        raise ParameterError(f"alpha must be > 1 (by more than 1e-12), got {alpha!r}")
    return alpha


def _check_j(j: int, what: str = "j") -> int:
    j = operator.index(j)
    if j < 1:
        raise ParameterError(f"{what} must be >= 1, got {j}")
    return j


class GeometricPartition:
    """Cached block boundaries for one base; reads are thread-safe."""

    def __init__(self, alpha: float):
        self.alpha = _check_alpha(alpha)
        self._powers = [1.0]  # alpha**(j-1) at list index j-1
        self._iotas = [1]     # iota_j at list index j-1
        self._lock = threading.Lock()

    def _extend_to(self, count: int) -> None:
        # count = number of cached iota entries required
        if len(self._iotas) >= count:
            return
        with self._lock:
            while len(self._iotas) < count:
                p = self._powers[-1] * self.alpha
                if p > _INT64_MAX:
                    raise HorizonError(
                        f"block boundary for alpha={self.alpha!r}, "
                        f"j={len(self._iotas) + 1} exceeds the 64-bit range"
                    )
                r = round(p)
                if r > 0 and abs(p - r) <= _SNAP_REL * p:
                    i = int(r)
                else:
                    i = int(math.ceil(p))
                prev = self._iotas[-1]
                self._powers.append(p)
                self._iotas.append(i if i > prev else prev)

    def power(self, j: int) -> float:
        """alpha**(j-1) as cached (raw repeated product, not snapped)."""
        j = _check_j(j)
        self._extend_to(j)
        return self._powers[j - 1]

    def iota(self, j: int) -> int:
        """Left boundary iota_j = ceil(alpha^(j-1)) with the snap guard."""
        j = _check_j(j)
        self._extend_to(j)
        return self._iotas[j - 1]

    def bounds(self, j: int) -> tuple[int, int]:
        """(lo, hi) with block j = [lo, hi) as integers; empty iff lo == hi."""
        j = _check_j(j)
        self._extend_to(j + 1)
        return self._iotas[j - 1], self._iotas[j]

    def weight(self, j: int) -> int:
        lo, hi = self.bounds(j)
        return hi - lo

    def real_length(self, j: int) -> float:
        """alpha^j - alpha^(j-1), the normalizer of real-length block means."""
        j = _check_j(j)
        self._extend_to(j + 1)
        return self._powers[j] - self._powers[j - 1]

    def block_index_of(self, n: int) -> int:
        """The unique j with iota_j <= n < iota_(j+1) and weight > 0."""
        n = operator.index(n)
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        while self._iotas[-1] <= n:
            self._extend_to(len(self._iotas) + 8)
        return bisect_right(self._iotas, n)

    def completed_blocks(self, n: int) -> int:
        """Largest J whose block lies entirely within [1, n]; may be 0."""
        n = operator.index(n)
        if n < 1:
            raise ParameterError(f"n must be >= 1, got {n}")
        try:
            while self._iotas[-1] <= n + 1:
                self._extend_to(len(self._iotas) + 8)
        except HorizonError:
            pass  # every cached boundary is <= n+1; count what we have
        return bisect_right(self._iotas, n + 1) - 1


def iota(alpha: float, j: int) -> int:
    return GeometricPartition(alpha).iota(j)


def block_bounds(alpha: float, j: int) -> tuple[int, int]:
    return GeometricPartition(alpha).bounds(j)


def weight(alpha: float, j: int) -> int:
    return GeometricPartition(alpha).weight(j)


def block_index_of(alpha: float, n: int) -> int:
    return GeometricPartition(alpha).block_index_of(n)
