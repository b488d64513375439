"""Counting functions and asymptotic-density estimation for integer sets.

The finite-horizon stand-in for liminf/limsup of #(A cap [1,n]) / n is the
pair of extremes of that ratio over a trailing window; the default window
is the trailing half, wide enough to contain both extremes of sets whose
oscillation has period ratio 2 (the a_s family).
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from .blocks import GeometricPartition
from .errors import ParameterError
from .seqcore import CHUNK, IndicatorSet
from .summability import _fmt


@dataclass(frozen=True)
class DensityReport:
    """Window extremes of the density ratio, with the indices attaining them."""

    set_name: str
    horizon: int
    count: int
    lower: float
    upper: float
    argmin_n: int
    argmax_n: int
    window_lo: int
    window_hi: int

    def to_csv(self, fp: TextIO) -> None:
        fp.write("horizon,count,lower,upper,argmin_n,argmax_n\n")
        fp.write(
            f"{self.horizon},{self.count},{_fmt(self.lower)},{_fmt(self.upper)},"
            f"{self.argmin_n},{self.argmax_n}\n"
        )

    def to_json_dict(self) -> dict:
        return {
            "schema": "cesaro.density/1",
            "set": self.set_name,
            "horizon": self.horizon,
            "count": self.count,
            "lower": float(self.lower),
            "upper": float(self.upper),
            "argmin_n": self.argmin_n,
            "argmax_n": self.argmax_n,
            "window": {"lo": self.window_lo, "hi": self.window_hi},
        }


def counting(iset: IndicatorSet, n: int) -> int:
    """#(A cap [1, n]); exact run-list arithmetic when runs are available,
    else a chunked membership scan."""
    n = operator.index(n)
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    runs = iset.runs_up_to(n)
    if runs is not None:
        return int((runs[:, 1] - runs[:, 0]).sum()) if runs.size else 0
    total = 0
    for lo in range(1, n + 1, CHUNK):
        hi = min(lo + CHUNK, n + 1)
        total += int(np.count_nonzero(iset.mask(lo, hi)))
    return total


def _check_window_fraction(wf: float) -> float:
    wf = float(wf)
    if not 0.0 < wf <= 1.0:
        raise ParameterError(f"window_fraction must lie in (0, 1], got {wf!r}")
    return wf


def density_band(iset: IndicatorSet, n: int,
                 window_fraction: float = 0.5) -> DensityReport:
    """min/max of #(A cap [1,k]) / k over the trailing window
    k in [ceil((1-window_fraction)*n), n], with first-attainment indices."""
    n = operator.index(n)
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    wf = _check_window_fraction(window_fraction)
    n0 = max(1, math.ceil((1.0 - wf) * n))

    carry = 0
    best_min = math.inf
    best_max = -math.inf
    argmin = argmax = n0
    for lo in range(1, n + 1, CHUNK):
        hi = min(lo + CHUNK, n + 1)
        counts = carry + np.cumsum(iset.mask(lo, hi).astype(np.int64))
        carry = int(counts[-1])
        if hi > n0:
            start = max(lo, n0)
            ratios = counts[start - lo:] / np.arange(start, hi, dtype=np.float64)
            i = int(np.argmin(ratios))
            if ratios[i] < best_min:
                best_min = float(ratios[i])
                argmin = start + i
            i = int(np.argmax(ratios))
            if ratios[i] > best_max:
                best_max = float(ratios[i])
                argmax = start + i
    return DensityReport(
        iset.name, n, carry, best_min, best_max, argmin, argmax, n0, n
    )


def block_density(iset: IndicatorSet, alpha: float, j: int) -> Optional[float]:
    """#(A cap block j) / w_j for the base-alpha partition; None when the
    block is empty.  Matches the cardinality block mean of the indicator
    sequence bit for bit (integer count, one float division)."""
    part = GeometricPartition(alpha)
    lo, hi = part.bounds(j)
    w = hi - lo
    if w == 0:
        return None
    runs = iset.runs_up_to(hi - 1)
    if runs is not None:
        starts = np.maximum(runs[:, 0], lo)
        stops = np.minimum(runs[:, 1], hi)
        count = int(np.maximum(stops - starts, 0).sum()) if runs.size else 0
    else:
        count = 0
        for s in range(lo, hi, CHUNK):
            count += int(np.count_nonzero(iset.mask(s, min(s + CHUNK, hi))))
    return count / w


def a_s_density_formulas(s: float) -> tuple[float, float]:
    """Closed-form (lower, upper) asymptotic densities of the a_s family:
    (1/(2+s), 2/(3+s))."""
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ParameterError(f"s must lie in [0, 1], got {s!r}")
    return 1.0 / (2.0 + s), 2.0 / (3.0 + s)
