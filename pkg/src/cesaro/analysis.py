"""Finite-truncation limit estimation and the equivalence checkers.

A :func:`tail_band` is the min/max of a series over a trailing window of
its defined entries.  The verdict rule is a surrogate for convergence, not
a decision procedure: a band of width at most ``2*tol`` counts as
converged (to the midpoint), anything wider oscillates, and an empty
window is inconclusive.  Reports always carry the raw band so callers can
apply stricter criteria.

``check_theorem1`` exercises the characterization of Cesàro convergence of
a bounded sequence through real-length block means for every base
alpha > 1; a finite base grid can only ever refute the forward direction,
so a non-converged Cesàro verdict is never inconsistent.
``check_theorem2`` exercises the single-base equivalence, which holds for
nonnegative sequences converging to zero.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .blocks import GeometricPartition
from .errors import ParameterError
from .seqcore import SequenceSource, counterexample, iter_chunks
from .summability import (
    CARDINALITY,
    REAL_LENGTH,
    BlockMeanSeries,
    MeanSeries,
    block_means,
    cesaro_means,
)

#: Default base grid: a base close to 1 (stresses empty blocks), the
#: dyadic base, and large bases (stressing the theta/alpha tail term).
DEFAULT_BASES = (1.2, 1.5, 2.0, math.e, 3.0, 10.0)

CONVERGED = "converged"
OSCILLATING = "oscillating"
INCONCLUSIVE = "inconclusive"

#: Trailing-window fraction used by the theorem checkers.  The block-mean
#: series of a slow base (alpha = 1.2) starts at very small blocks, whose
#: boundary jitter is comparable to 0.01 already around sqrt(N); a trailing
#: quarter keeps the window inside the well-resolved tail.
DEFAULT_WINDOW_FRACTION = 0.25


@dataclass(frozen=True)
class LimitEstimate:
    """Tail band of a series with a convergence verdict at finite truncation."""

    tail_min: Optional[float]
    tail_max: Optional[float]
    verdict: str
    value: Optional[float]
    tol: float
    window_first: int
    window_last: int
    window_count: int

    @property
    def width(self) -> float:
        if self.tail_min is None:
            return math.nan
        return self.tail_max - self.tail_min

    def converged_to(self, target: float, tol: Optional[float] = None) -> bool:
        if self.verdict != CONVERGED:
            return False
        return abs(self.value - float(target)) <= (self.tol if tol is None else tol)

    def to_json_dict(self) -> dict:
        return {
            "tail_min": self.tail_min,
            "tail_max": self.tail_max,
            "verdict": self.verdict,
            "value": self.value,
            "tol": self.tol,
            "window": {
                "first": self.window_first,
                "last": self.window_last,
                "count": self.window_count,
            },
        }


def _inconclusive(tol: float) -> LimitEstimate:
    return LimitEstimate(None, None, INCONCLUSIVE, None, tol, 0, 0, 0)


def tail_band(series: Union[MeanSeries, BlockMeanSeries, Sequence[float]],
              window_fraction: float, tol: float) -> LimitEstimate:
    """Band of the trailing window; indices are n for mean series and j for
    block series, and undefined block entries are skipped."""
    wf = float(window_fraction)
    if not 0.0 < wf <= 1.0:
        raise ParameterError(f"window_fraction must lie in (0, 1], got {wf!r}")
    tol = float(tol)
    if tol <= 0:
        raise ParameterError(f"tol must be > 0, got {tol!r}")

    if isinstance(series, MeanSeries):
        values, defined = series.a, None
    elif isinstance(series, BlockMeanSeries):
        values, defined = series.value, series.defined
    else:
        values, defined = np.asarray(series, dtype=np.float64), None
    length = int(values.shape[0])
    if length == 0:
        raise ParameterError("tail_band: series is empty")

    first = max(1, math.ceil((1.0 - wf) * length))
    window = values[first - 1:]
    if defined is not None:
        keep = defined[first - 1:]
        if not keep.any():
            return _inconclusive(tol)
        positions = np.flatnonzero(keep)
        window = window[keep]
        w_first = first + int(positions[0])
        w_last = first + int(positions[-1])
    else:
        w_first, w_last = first, length

    tail_min = float(np.min(window))
    tail_max = float(np.max(window))
    if tail_max - tail_min <= 2.0 * tol:
        verdict, value = CONVERGED, (tail_min + tail_max) / 2.0
    else:
        verdict, value = OSCILLATING, None
    return LimitEstimate(
        tail_min, tail_max, verdict, value, tol, w_first, w_last, int(window.shape[0])
    )


@dataclass(frozen=True)
class BaseVerdict:
    alpha: float
    j_count: int
    estimate: LimitEstimate

    def to_json_dict(self) -> dict:
        doc = {"alpha": self.alpha, "J": self.j_count}
        band = self.estimate.to_json_dict()
        doc["band"] = {"tail_min": band["tail_min"], "tail_max": band["tail_max"]}
        doc["verdict"] = self.estimate.verdict
        doc["value"] = self.estimate.value
        return doc


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    source: str
    n: int
    tol: float
    cesaro: LimitEstimate
    bases: tuple[BaseVerdict, ...]
    consistent: bool
    notes: tuple[str, ...]
    witness_alpha: Optional[float] = None
    witness: Optional[BlockMeanSeries] = None

    def to_json_dict(self) -> dict:
        return {
            "schema": "cesaro.theorem-report/1",
            "theorem": self.theorem,
            "source": self.source,
            "N": self.n,
            "tol": self.tol,
            "cesaro": self.cesaro.to_json_dict(),
            "bases": [b.to_json_dict() for b in self.bases],
            "consistent": self.consistent,
            "notes": list(self.notes),
            "witness_alpha": self.witness_alpha,
        }


def _check_n(n: int, minimum: int = 1) -> int:
    n = operator.index(n)
    if n < minimum:
        raise ParameterError(f"N must be >= {minimum}, got {n}")
    return n


def _base_estimate(src: SequenceSource, alpha: float, n: int,
                   j_cap: Optional[int], tol: float,
                   wf: float) -> tuple[BaseVerdict, Optional[BlockMeanSeries]]:
    part = GeometricPartition(alpha)
    j_count = part.completed_blocks(n)
    if j_cap is not None:
        j_count = min(j_count, j_cap)
    if j_count < 1:
        return BaseVerdict(part.alpha, 0, _inconclusive(tol)), None
    bms = block_means(src, alpha, j_count, mode=REAL_LENGTH)
    return BaseVerdict(part.alpha, j_count, tail_band(bms, wf, tol)), bms


def check_theorem1(src: SequenceSource, bases: Sequence[float], n: int,
                   j_count: Optional[int] = None, tol: float = 0.01,
                   window_fraction: float = DEFAULT_WINDOW_FRACTION) -> TheoremReport:
    """All-bases equivalence harness for a bounded sequence.

    Consistency rule: if the Cesàro verdict is converged to some value,
    every base's real-length block means must be converged to that value
    within tol; the first base violating it becomes the witness.  A
    non-converged Cesàro verdict cannot be contradicted by finitely many
    bases, but a note records when every sampled base converged anyway.
    """
    if not bases:
        raise ParameterError("bases must be nonempty")
    n = _check_n(n)
    means = cesaro_means(src, n)
    ces = tail_band(means, window_fraction, tol)

    results: list[BaseVerdict] = []
    notes: list[str] = []
    consistent = True
    witness_alpha = None
    witness = None
    for alpha in sorted({float(a) for a in bases}):
        verdict, bms = _base_estimate(src, alpha, n, j_count, tol, window_fraction)
        results.append(verdict)
        if ces.verdict == CONVERGED:
            est = verdict.estimate
            if not (est.verdict == CONVERGED and abs(est.value - ces.value) <= tol):
                consistent = False
                if witness_alpha is None:
                    witness_alpha = verdict.alpha
                    witness = bms
                notes.append(
                    f"base {verdict.alpha!r}: block means do not settle at the "
                    f"Cesàro value {ces.value!r} within tol"
                )
    if ces.verdict != CONVERGED and results and all(
        b.estimate.verdict == CONVERGED for b in results
    ):
        notes.append(
            "every sampled base converged while the Cesàro means did not; a "
            "finite base grid cannot certify Cesàro convergence"
        )
    return TheoremReport(
        "theorem1", src.label, n, tol, ces, tuple(results), consistent,
        tuple(notes), witness_alpha, witness,
    )


def check_theorem2(src: SequenceSource, alpha: float, n: int,
                   j_count: Optional[int] = None, tol: float = 0.01,
                   window_fraction: float = DEFAULT_WINDOW_FRACTION) -> TheoremReport:
    """Single-base equivalence harness for a nonnegative sequence:
    real-length block means settle at 0 iff the Cesàro means do."""
    n = _check_n(n)
    for start, vals in iter_chunks(src, 1, n + 1):
        neg = vals < 0
        if neg.any():
            i = start + int(np.argmax(neg))
            raise ParameterError(
                f"nonnegative sequence required: x_{i} = {vals[i - start]!r} < 0"
            )
    means = cesaro_means(src, n)
    ces = tail_band(means, window_fraction, tol)
    verdict, _ = _base_estimate(src, alpha, n, j_count, tol, window_fraction)

    block_zero = verdict.estimate.converged_to(0.0)
    ces_zero = ces.converged_to(0.0)
    consistent = block_zero == ces_zero
    notes = [
        f"block means settle at 0 within tol: {block_zero}",
        f"Cesàro means settle at 0 within tol: {ces_zero}",
    ]
    return TheoremReport(
        "theorem2", src.label, n, tol, ces, (verdict,), consistent, tuple(notes)
    )


@dataclass(frozen=True)
class CounterexampleDemo:
    """Signed counterexample at one glance: dyadic block means vanish from
    block 2 on while the Cesàro means keep oscillating."""

    n: int
    block_series: BlockMeanSeries
    max_abs_block_mean_from_2: float
    cesaro_band: LimitEstimate
    limsup_estimate: float
    max_mean: float
    max_mean_at: int
    samples_3x2k: tuple[tuple[int, int, float], ...]
    samples_peaks: tuple[tuple[int, int, float], ...]

    def to_json_dict(self) -> dict:
        return {
            "schema": "cesaro.counterexample-demo/1",
            "N": self.n,
            "alpha": 2.0,
            "max_abs_block_mean_from_2": self.max_abs_block_mean_from_2,
            "block_means": self.block_series.to_json_dict(),
            "cesaro_band": self.cesaro_band.to_json_dict(),
            "limsup_estimate": self.limsup_estimate,
            "max_mean": self.max_mean,
            "max_mean_at": self.max_mean_at,
            "samples_3x2k": [
                {"k": k, "n": nn, "a_n": a} for k, nn, a in self.samples_3x2k
            ],
            "samples_peaks": [
                {"k": k, "n": nn, "a_n": a} for k, nn, a in self.samples_peaks
            ],
        }


def counterexample_demo(n: int) -> CounterexampleDemo:
    """Measure the signed counterexample up to index n (n >= 2^10).

    The empirical limsup of a_n (the tail-band maximum over the trailing
    half window) is reported as measured, never assumed; a_n is also
    sampled along n = 3*2^k and along the local maxima n = 3*2^(k-1) - 1.
    """
    n = _check_n(n, minimum=1 << 10)
    src = counterexample()
    means = cesaro_means(src, n)
    band = tail_band(means, 0.5, tol=0.01)

    part = GeometricPartition(2.0)
    j_count = part.completed_blocks(n)
    bms = block_means(src, 2.0, j_count, mode=CARDINALITY)
    from_2 = bms.value[1:][bms.defined[1:]]
    max_abs = float(np.max(np.abs(from_2))) if from_2.size else 0.0

    at = int(np.argmax(means.a)) + 1
    peak = float(means.a[at - 1])

    up = []
    k = 1
    while 3 * (1 << k) <= n:
        m = 3 * (1 << k)
        up.append((k, m, float(means.a[m - 1])))
        k += 1
    peaks = []
    k = 1
    while 3 * (1 << (k - 1)) - 1 <= n:
        m = 3 * (1 << (k - 1)) - 1
        peaks.append((k, m, float(means.a[m - 1])))
        k += 1

    return CounterexampleDemo(
        n, bms, max_abs, band, band.tail_max, peak, at, tuple(up), tuple(peaks)
    )
