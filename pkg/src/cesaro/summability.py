"""Streaming means and the exact identities that tie them together.

Everything is computed in one ordered pass over the source, with Neumaier
compensated accumulation, so the decomposition and telescoping residuals
below measure floating-point noise only (both are zero in real
arithmetic).  The default residual tolerance used by the test suite is
1e-9 * n * theta, where theta bounds |x_i| over the scanned prefix.

Block means come in two normalizations:

* ``cardinality``  - divide the block sum by the number of integers in the
  block (undefined when the block is empty);
* ``real-length``  - divide by alpha^j - alpha^(j-1), the length of the
  real interval generating the block.

The two agree in the limit since weight / real length -> 1.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from . import kernels
from .blocks import GeometricPartition
from .errors import ParameterError
from .seqcore import SequenceSource, iter_chunks

CARDINALITY = "cardinality"
REAL_LENGTH = "real-length"
_MODES = (CARDINALITY, REAL_LENGTH)


def _fmt(x) -> str:
    return repr(float(x))


def _check_count(n: int, what: str) -> int:
    n = operator.index(n)
    if n < 1:
        raise ParameterError(f"{what} must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class MeanSeries:
    """Running means a_n for n = 1..len(a); a[i] is the mean at n = i + 1.

    ``total``/``correction`` hold the final compensated partial-sum state,
    so ``total + correction`` is the accumulated sum over the whole prefix.
    """

    a: np.ndarray
    source_label: str
    kind: str              # "cesaro" or "strong"
    center: Optional[float]
    total: float
    correction: float

    def __len__(self) -> int:
        return int(self.a.shape[0])

    @property
    def n(self) -> int:
        return len(self)

    @property
    def last(self) -> float:
        return float(self.a[-1])

    def to_csv(self, fp: TextIO) -> None:
        fp.write("n,a_n\n")
        for i, v in enumerate(self.a, 1):
            fp.write(f"{i},{_fmt(v)}\n")

    def to_json_dict(self) -> dict:
        doc = {
            "schema": "cesaro.means/1",
            "generator": self.source_label,
            "kind": self.kind,
            "N": len(self),
            "a": [float(v) for v in self.a],
        }
        if self.center is not None:
            doc["center"] = float(self.center)
        return doc


@dataclass(frozen=True)
class BlockMeanSeries:
    """Per-block records (j, w_j, b_j) for one base; undefined entries
    (empty blocks) carry value NaN and defined = False."""

    alpha: float
    mode: str
    j: np.ndarray
    w: np.ndarray
    value: np.ndarray
    defined: np.ndarray
    source_label: str

    def __len__(self) -> int:
        return int(self.j.shape[0])

    def defined_values(self) -> np.ndarray:
        return self.value[self.defined]

    def to_csv(self, fp: TextIO) -> None:
        fp.write("j,w,b,defined\n")
        for jj, ww, vv, dd in zip(self.j, self.w, self.value, self.defined):
            b = _fmt(vv) if dd else ""
            fp.write(f"{jj},{ww},{b},{'true' if dd else 'false'}\n")

    def to_json_dict(self) -> dict:
        return {
            "schema": "cesaro.block-means/1",
            "generator": self.source_label,
            "alpha": float(self.alpha),
            "mode": self.mode,
            "j": [int(v) for v in self.j],
            "w": [int(v) for v in self.w],
            "b": [float(v) if d else None for v, d in zip(self.value, self.defined)],
            "defined": [bool(d) for d in self.defined],
        }


class W1NormState:
    """Running sup of dyadic-block averages of |x_k|; never decreases."""

    def __init__(self) -> None:
        self.value = 0.0
        self.blocks_completed = 0

    def observe_block(self, mean_abs: float) -> None:
        if mean_abs > self.value:
            self.value = mean_abs
        self.blocks_completed += 1


def cesaro_means(src: SequenceSource, n: int) -> MeanSeries:
    """a_k = (1/k) sum_{i<=k} x_i for k = 1..n, in one pass."""
    n = _check_count(n, "n")
    sums = np.empty(n, np.float64)
    s = c = 0.0
    for start, vals in iter_chunks(src, 1, n + 1):
        s, c = kernels.running_sums(vals, s, c, sums[start - 1:start - 1 + vals.shape[0]])
    sums /= np.arange(1, n + 1, dtype=np.float64)
    return MeanSeries(sums, src.label, "cesaro", None, s, c)


def strong_cesaro_means(src: SequenceSource, center: float, n: int) -> MeanSeries:
    """Entry k is (1/k) sum_{i<=k} |x_i - center|."""
    n = _check_count(n, "n")
    center = float(center)
    sums = np.empty(n, np.float64)
    s = c = 0.0
    for start, vals in iter_chunks(src, 1, n + 1):
        s, c = kernels.running_sums(
            np.abs(vals - center), s, c, sums[start - 1:start - 1 + vals.shape[0]]
        )
    sums /= np.arange(1, n + 1, dtype=np.float64)
    return MeanSeries(sums, src.label, "strong", center, s, c)


def w1_norm_partial(src: SequenceSource, m_max: int) -> float:
    """sup over 1 <= m <= m_max of the average of |x_k| on [2^m, 2^(m+1)).

    Evaluates the source up to index 2^(m_max+1) - 1.
    """
    state = w1_norm_state(src, m_max)
    return state.value


def w1_norm_state(src: SequenceSource, m_max: int) -> W1NormState:
    state = W1NormState()
    for mean_abs in w1_block_abs_means(src, m_max):
        state.observe_block(float(mean_abs))
    return state


def w1_block_abs_means(src: SequenceSource, m_max: int) -> np.ndarray:
    """Average of |x_k| over [2^m, 2^(m+1)) for m = 1..m_max."""
    m_max = _check_count(m_max, "m_max")
    out = np.empty(m_max, np.float64)
    for m in range(1, m_max + 1):
        lo, hi = 1 << m, 1 << (m + 1)
        s = c = 0.0
        for _, vals in iter_chunks(src, lo, hi):
            s, c = kernels.fold_sum(np.abs(vals), s, c)
        out[m - 1] = (s + c) / (1 << m)
    return out


def _block_sums(src: SequenceSource, part: GeometricPartition,
                j_count: int) -> tuple[np.ndarray, np.ndarray]:
    w = np.empty(j_count, np.int64)
    sums = np.empty(j_count, np.float64)
    for j in range(1, j_count + 1):
        lo, hi = part.bounds(j)
        w[j - 1] = hi - lo
        s = c = 0.0
        for _, vals in iter_chunks(src, lo, hi):
            s, c = kernels.fold_sum(vals, s, c)
        sums[j - 1] = s + c
    return w, sums


def _check_mode(mode: str) -> str:
    mode = str(mode).replace("_", "-").lower()
    if mode not in _MODES:
        raise ParameterError(f"mode must be one of {_MODES}, got {mode!r}")
    return mode


def block_means(src: SequenceSource, alpha: float, j_count: int,
                mode: str = CARDINALITY) -> BlockMeanSeries:
    """Means of x over the blocks j = 1..j_count of the base-alpha partition,
    in one ordered pass over [1, iota_(j_count+1))."""
    j_count = _check_count(j_count, "J")
    mode = _check_mode(mode)
    part = GeometricPartition(alpha)
    w, sums = _block_sums(src, part, j_count)
    defined = w > 0
    value = np.full(j_count, np.nan)
    if mode == CARDINALITY:
        np.divide(sums, w, out=value, where=defined)
    else:
        lengths = np.array([part.real_length(j) for j in range(1, j_count + 1)])
        np.divide(sums, lengths, out=value, where=defined)
    return BlockMeanSeries(
        part.alpha, mode, np.arange(1, j_count + 1, dtype=np.int64),
        w, value, defined, src.label,
    )


def shifted(src: SequenceSource, center: float) -> SequenceSource:
    """The source x_n - center, with the declared bound widened to
    theta + |center|."""
    center = float(center)
    bound = None
    if src.declared_bound is not None:
        bound = src.declared_bound + abs(center)

    def rng(lo: int, hi: int) -> np.ndarray:
        return src.values(lo, hi) - center

    return SequenceSource(
        "shifted", (("base", src.label), ("by", center)), bound, src.length, rng
    )


def decomposition_residual(src: SequenceSource, alpha: float, n: int) -> float:
    """|S_n - (sum_{j<k} w_j b_j + partial block-k sum)| with k the block
    containing n; zero in real arithmetic, float noise here."""
    n = _check_count(n, "n")
    part = GeometricPartition(alpha)
    k = part.block_index_of(n)
    ts = tc = 0.0
    terms = []
    for j in range(1, k + 1):
        lo, hi = part.bounds(j)
        hi = min(hi, n + 1)
        s = c = 0.0
        for _, vals in iter_chunks(src, lo, hi):
            s, c = kernels.fold_sum(vals, s, c)
            ts, tc = kernels.fold_sum(vals, ts, tc)
        bsum = s + c
        if j < k:
            wj = hi - lo
            if wj > 0:
                terms.append(wj * (bsum / wj))
        else:
            terms.append(bsum)
    return abs((ts + tc) - math.fsum(terms))


def telescoping_residuals(src: SequenceSource, alpha: float, k_max: int) -> np.ndarray:
    """Residuals |w_k b_k - (S_(iota_(k+1)-1) - S_(iota_k-1))| for
    k = 1..k_max, NaN where the block is empty; one pass overall."""
    k_max = _check_count(k_max, "k_max")
    part = GeometricPartition(alpha)
    out = np.full(k_max, np.nan)
    ts = tc = 0.0
    for j in range(1, k_max + 1):
        lo, hi = part.bounds(j)
        pre = ts + tc
        s = c = 0.0
        for _, vals in iter_chunks(src, lo, hi):
            s, c = kernels.fold_sum(vals, s, c)
            ts, tc = kernels.fold_sum(vals, ts, tc)
        if hi > lo:
            bsum = s + c
            wj = hi - lo
            out[j - 1] = abs(wj * (bsum / wj) - ((ts + tc) - pre))
    return out


def telescoping_residual(src: SequenceSource, alpha: float, k: int) -> Optional[float]:
    """Single-k form; None signals a not-applicable (empty) block.

    Cost is one pass up to iota_(k+1) - 1 regardless of k.
    """
    k = _check_count(k, "k")
    res = telescoping_residuals(src, alpha, k)[k - 1]
    return None if math.isnan(res) else float(res)
