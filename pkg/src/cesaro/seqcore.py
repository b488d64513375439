"""Sequence sources and integer-set indicators.

A :class:`SequenceSource` is a pure, deterministic mapping from a 1-based
index ``n`` to a real value, evaluated in vectorized half-open ranges.
Sources are immutable after construction and safe to share across threads.

The generators match the built-in CLI names: ``constant``, ``alternating``,
``counterexample`` (the signed sequence that is +1 on ``[2^k, 3*2^(k-1))``
and -1 elsewhere), the ``a_s`` indicator family, the ``paper-example``
indicator of the union of the runs ``{2^m+1, ..., 2^m+m}``, file-backed
tables, and a seeded bounded random table.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from . import kernels
from .errors import DomainError, ParameterError

# Largest index whose float64 image is exact; generators rely on that.
MAX_INDEX = 1 << 53

# Chunk length used by every streaming pass over a source.
CHUNK = 1 << 17


def _check_range(lo: int, hi: int, length: Optional[int], what: str) -> tuple[int, int]:
    lo = operator.index(lo)
    hi = operator.index(hi)
    if lo < 1:
        raise DomainError(f"{what}: indices start at 1, got {lo}")
    if hi < lo:
        raise DomainError(f"{what}: empty or reversed range [{lo}, {hi})")
    if hi - 1 > MAX_INDEX:
        raise DomainError(f"{what}: index {hi - 1} beyond the 2**53 horizon")
    if length is not None and hi - 1 > length:
        raise DomainError(
            f"{what}: index {hi - 1} beyond the source length {length}"
        )
    return lo, hi


def _fmt_param(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class SequenceSource:
    """Deterministic sequence (x_n), n >= 1, with an optional bound theta."""

    kind: str
    params: tuple
    declared_bound: Optional[float]
    length: Optional[int]
    _range_fn: Callable[[int, int], np.ndarray] = field(repr=False)

    @property
    def label(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={_fmt_param(v)}" for k, v in self.params)
        return f"{self.kind}({inner})"

    def values(self, lo: int, hi: int) -> np.ndarray:
        """Evaluate x_n for n in [lo, hi) as a float64 array."""
        lo, hi = _check_range(lo, hi, self.length, self.label)
        out = self._range_fn(lo, hi)
        return out

    def at(self, n: int) -> float:
        """Evaluate a single term x_n."""
        return float(self.values(n, n + 1)[0])


def iter_chunks(src: SequenceSource, lo: int, hi: int,
                chunk: int = CHUNK) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (start, values) blocks covering [lo, hi) in index order."""
    for start in range(lo, hi, chunk):
        stop = min(start + chunk, hi)
        yield start, src.values(start, stop)


# ---------------------------------------------------------------------------
# generators


def constant(value: float) -> SequenceSource:
    v = float(value)

    def rng(lo: int, hi: int) -> np.ndarray:
        return np.full(hi - lo, v)

    return SequenceSource("constant", (("value", v),), abs(v), None, rng)


def alternating() -> SequenceSource:
    """The sequence 1, 0, 1, 0, ... (indicator of the odd integers)."""

    def rng(lo: int, hi: int) -> np.ndarray:
        return (np.arange(lo, hi, dtype=np.int64) & 1).astype(np.float64)

    return SequenceSource("alternating", (), 1.0, None, rng)


def counterexample() -> SequenceSource:
    """Signed +/-1 sequence: +1 iff 2^k <= n < 3*2^(k-1) for some k >= 1."""
    return SequenceSource(
        "counterexample", (), 1.0, None,
        lambda lo, hi: kernels.counterexample_values(lo, hi),
    )


def counterexample_sign(n: int) -> float:
    """Scalar form of :func:`counterexample`, computed in pure integers."""
    n = operator.index(n)
    if n < 1:
        raise DomainError(f"counterexample_sign: indices start at 1, got {n}")
    k = n.bit_length() - 1
    return 1.0 if k >= 1 and 2 * n < (3 << k) else -1.0


def _check_s(s: float) -> float:
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ParameterError(f"s must lie in [0, 1], got {s!r}")
    return s


def a_s_member(s: float, n: int) -> bool:
    """Membership of n in the union of runs of length 2^(m-1) starting at
    2^m + floor(s*2^(m-1)), computed in pure integer arithmetic."""
    s = _check_s(s)
    n = operator.index(n)
    if n < 1:
        raise DomainError(f"a_s_member: indices start at 1, got {n}")
    k = n.bit_length() - 1
    for m in (k, k - 1):
        if m >= 1:
            half = 1 << (m - 1)
            base = (1 << m) + int(math.floor(s * half))
            if base < n <= base + half:
                return True
    return False


def paper_example_member(n: int) -> bool:
    """Membership of n in the union of the runs {2^m+1, ..., 2^m+m}."""
    n = operator.index(n)
    if n < 1:
        raise DomainError(f"paper_example_member: indices start at 1, got {n}")
    k = n.bit_length() - 1
    return k >= 1 and (1 << k) < n <= (1 << k) + k


# ---------------------------------------------------------------------------
# indicator sets


@dataclass(frozen=True)
class IndicatorSet:
    """Set of positive integers given by a vectorized membership test.

    ``runs_up_to`` optionally exposes the set below a limit as sorted,
    pairwise-disjoint half-open integer intervals; counting against runs is
    exact integer arithmetic and serves as an independent route next to
    mask scans.
    """

    name: str
    _mask_fn: Callable[[int, int], np.ndarray] = field(repr=False)
    _runs_fn: Optional[Callable[[int], np.ndarray]] = field(default=None, repr=False)

    def mask(self, lo: int, hi: int) -> np.ndarray:
        lo, hi = _check_range(lo, hi, None, self.name)
        return self._mask_fn(lo, hi)

    def contains(self, n: int) -> bool:
        return bool(self.mask(n, n + 1)[0])

    @property
    def has_runs(self) -> bool:
        return self._runs_fn is not None

    def runs_up_to(self, limit: int) -> Optional[np.ndarray]:
        """Half-open (start, stop) rows clipped to [1, limit], or None."""
        if self._runs_fn is None:
            return None
        limit = operator.index(limit)
        if limit < 1:
            raise DomainError(f"{self.name}: runs limit must be >= 1")
        return self._runs_fn(limit)

    def source(self) -> SequenceSource:
        """The induced 0/1 sequence."""
        mask_fn = self._mask_fn
        return SequenceSource(
            "indicator", (("set", self.name),), 1.0, None,
            lambda lo, hi: mask_fn(lo, hi).astype(np.float64),
        )


def a_s_set(s: float) -> IndicatorSet:
    s = _check_s(s)

    def runs(limit: int) -> np.ndarray:
        rows = []
        m = 1
        while True:
            half = 1 << (m - 1)
            base = (1 << m) + int(math.floor(s * half))
            start = base + 1
            if start > limit:
                break
            rows.append((start, min(base + half, limit) + 1))
            m += 1
        return np.array(rows, dtype=np.int64).reshape(-1, 2)

    return IndicatorSet(
        f"a_s(s={s!r})",
        lambda lo, hi: kernels.a_s_values(s, lo, hi) != 0.0,
        runs,
    )


def paper_example_set() -> IndicatorSet:
    def runs(limit: int) -> np.ndarray:
        rows = []
        m = 1
        while (1 << m) + 1 <= limit:
            rows.append(((1 << m) + 1, min((1 << m) + m, limit) + 1))
            m += 1
        return np.array(rows, dtype=np.int64).reshape(-1, 2)

    return IndicatorSet(
        "paper-example",
        lambda lo, hi: kernels.paper_example_values(lo, hi) != 0.0,
        runs,
    )


def multiples_of(k: int) -> IndicatorSet:
    k = operator.index(k)
    if k < 1:
        raise ParameterError(f"multiples_of: k must be >= 1, got {k}")

    def mask(lo: int, hi: int) -> np.ndarray:
        return np.arange(lo, hi, dtype=np.int64) % k == 0

    return IndicatorSet(f"multiples-of-{k}", mask)


def from_runs(intervals, name: str = "runs") -> IndicatorSet:
    """Indicator of a finite union of inclusive integer intervals."""
    rows = []
    for pair in intervals:
        lo, hi = pair
        lo = operator.index(lo)
        hi = operator.index(hi)
        if lo < 1 or hi < lo:
            raise ParameterError(f"bad interval [{lo}, {hi}] in run list")
        rows.append((lo, hi + 1))
    rows.sort()
    merged: list[tuple[int, int]] = []
    for lo, stop in rows:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], stop))
        else:
            merged.append((lo, stop))
    table = np.array(merged, dtype=np.int64).reshape(-1, 2)

    def mask(lo: int, hi: int) -> np.ndarray:
        n = np.arange(lo, hi, dtype=np.int64)
        idx = np.searchsorted(table[:, 0], n, side="right") - 1
        ok = idx >= 0
        safe = np.where(ok, idx, 0)
        return ok & (n < table[safe, 1]) if len(table) else np.zeros(n.shape, bool)

    def runs(limit: int) -> np.ndarray:
        clipped = [(lo, min(stop, limit + 1)) for lo, stop in merged if lo <= limit]
        return np.array(clipped, dtype=np.int64).reshape(-1, 2)

    return IndicatorSet(name, mask, runs)


def from_source(src: SequenceSource, name: Optional[str] = None) -> IndicatorSet:
    """Wrap a 0/1-valued source as a set; rejects other values on the fly."""

    def mask(lo: int, hi: int) -> np.ndarray:
        v = src.values(lo, hi)
        bad = (v != 0.0) & (v != 1.0)
        if bad.any():
            i = lo + int(np.argmax(bad))
            raise ParameterError(
                f"source {src.label} is not 0/1-valued: x_{i} = {v[i - lo]!r}"
            )
        return v != 0.0

    return IndicatorSet(name or src.label, mask)


def indicator(iset: IndicatorSet) -> SequenceSource:
    return iset.source()


# ---------------------------------------------------------------------------
# table-backed sources


def _table_source(kind: str, params: tuple, table: np.ndarray,
                  bound: Optional[float]) -> SequenceSource:
    table = np.ascontiguousarray(table, dtype=np.float64)

    def rng(lo: int, hi: int) -> np.ndarray:
        return table[lo - 1:hi - 1]

    return SequenceSource(kind, params, bound, int(table.shape[0]), rng)


def from_file(path) -> SequenceSource:
    """Load a sequence file: one decimal real per line, UTF-8, lines whose
    first non-blank character is '#' are skipped, values are x_1, x_2, ...
    """
    path = str(path)
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise ParameterError(f"{path}:{lineno}: not a number: {text!r}") from None
    table = np.asarray(values, dtype=np.float64)
    bound = float(np.max(np.abs(table))) if table.size else 0.0
    return _table_source("file", (("path", path),), table, bound)


def random_bounded(seed: int, bound: float, n: int) -> SequenceSource:
    """Reproducible uniform values in [-bound, bound].

    The stream is NumPy's PCG64 generator seeded with ``seed`` and drawn
    through ``Generator.uniform``; a fixed (seed, bound, n) triple always
    yields the same table.
    """
    seed = operator.index(seed)
    n = operator.index(n)
    bound = float(bound)
    if bound <= 0:
        raise ParameterError(f"bound must be > 0, got {bound!r}")
    if n < 1:
        raise ParameterError(f"length must be >= 1, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    table = rng.uniform(-bound, bound, size=n)
    return _table_source(
        "random", (("seed", seed), ("bound", bound), ("n", n)), table, bound
    )


# ---------------------------------------------------------------------------


def sup_abs_prefix(src: SequenceSource, n: int) -> float:
    """max |x_i| over 1 <= i <= n, streamed."""
    n = operator.index(n)
    if n < 1:
        raise DomainError(f"sup_abs_prefix: n must be >= 1, got {n}")
    sup = 0.0
    for _, vals in iter_chunks(src, 1, n + 1):
        if vals.size:
            sup = max(sup, float(np.max(np.abs(vals))))
    return sup
