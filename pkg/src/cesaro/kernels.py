"""Hot numeric kernels: generator evaluation and compensated accumulation.

Every kernel exists in two variants, a numba ``@njit`` loop and a
vectorized pure-numpy fallback; :mod:`cesaro.backend` decides which set is
bound to the public names at import time.

Index arguments are 1-based and ranges are half-open, ``[lo, hi)``.
Callers guarantee ``1 <= lo <= hi <= 2**53`` so that float64 conversion of
an index (and hence ``frexp``) is exact.

Compensated accumulator state is a pair ``(total, correction)``; the
corrected value of the sum is ``total + correction`` (Neumaier's variant
of Kahan summation).
"""

import math

import numpy as np

from .backend import NUMBA_ENABLED

# Sub-chunk length for the numpy fallback of the running-sum scan.  Keeps
# the plain-cumsum error per entry below ~1e-13 of the accumulated mass.
_SCAN_CHUNK = 1024


def _merge(s: float, c: float, v: float) -> tuple[float, float]:
    # One scalar Neumaier step: fold v into (s, c).
    t = s + v
    if abs(s) >= abs(v):
        c += (s - t) + v
    else:
        c += (v - t) + s
    return t, c


if NUMBA_ENABLED:
    from numba import njit

    @njit(cache=True)
    def counterexample_values(lo, hi):
        out = np.empty(hi - lo, np.float64)
        for i in range(out.shape[0]):
            n = lo + i
            _, e = math.frexp(n)
            k = e - 1  # floor(log2(n)), exact below 2**53
            if k >= 1 and 2 * n < (3 << k):
                out[i] = 1.0
            else:
                out[i] = -1.0
        return out

    @njit(cache=True)
    def a_s_values(s, lo, hi):
        out = np.empty(hi - lo, np.float64)
        for i in range(out.shape[0]):
            n = lo + i
            _, e = math.frexp(n)
            k = e - 1
            val = 0.0
            # membership can only come from the run anchored at 2**k or,
            # for n = 2**k exactly, from the run anchored at 2**(k-1)
            for m in range(k, k - 2, -1):
                if m >= 1:
                    half = 1 << (m - 1)
                    base = (1 << m) + int(math.floor(s * half))
                    if base < n <= base + half:
                        val = 1.0
            out[i] = val
        return out

    @njit(cache=True)
    def paper_example_values(lo, hi):
        out = np.empty(hi - lo, np.float64)
        for i in range(out.shape[0]):
            n = lo + i
            _, e = math.frexp(n)
            k = e - 1
            if k >= 1 and n > (1 << k) and n <= (1 << k) + k:
                out[i] = 1.0
            else:
                out[i] = 0.0
        return out

    @njit(cache=True)
    def running_sums(x, s, c, out):
        for i in range(x.shape[0]):
            v = x[i]
            t = s + v
            if abs(s) >= abs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
            out[i] = s + c
        return s, c

    @njit(cache=True)
    def fold_sum(x, s, c):
        for i in range(x.shape[0]):
            v = x[i]
            t = s + v
            if abs(s) >= abs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
        return s, c

else:

    def _index_log2(lo, hi):
        n = np.arange(lo, hi, dtype=np.int64)
        k = (np.frexp(n.astype(np.float64))[1].astype(np.int64)) - 1
        return n, k

    def counterexample_values(lo, hi):
        n, k = _index_log2(lo, hi)
        plus = (k >= 1) & (2 * n < np.left_shift(np.int64(3), k))
        return np.where(plus, 1.0, -1.0)

    def a_s_values(s, lo, hi):
        n, k = _index_log2(lo, hi)
        member = np.zeros(n.shape, dtype=bool)
        for dm in (0, 1):
            m = k - dm
            ok = m >= 1
            ms = np.where(ok, m, np.int64(1))
            half = np.left_shift(np.int64(1), ms - 1)
            off = np.floor(s * half).astype(np.int64)
            base = np.left_shift(np.int64(1), ms) + off
            member |= ok & (base < n) & (n <= base + half)
        return member.astype(np.float64)

    def paper_example_values(lo, hi):
        n, k = _index_log2(lo, hi)
        pow2 = np.left_shift(np.int64(1), np.maximum(k, np.int64(0)))
        member = (k >= 1) & (n > pow2) & (n <= pow2 + k)
        return member.astype(np.float64)

    def running_sums(x, s, c, out):
        for start in range(0, x.shape[0], _SCAN_CHUNK):
            seg = x[start:start + _SCAN_CHUNK]
            cs = np.cumsum(seg)
            np.add(cs, s + c, out=out[start:start + seg.shape[0]])
            # fold the (pairwise) chunk total into the carried state
            s, c = _merge(s, c, float(np.sum(seg)))
        return s, c

    def fold_sum(x, s, c):
        return _merge(s, c, float(np.sum(x)))


def warmup() -> None:
    """Force kernel compilation so timed runs do not pay the JIT cost."""
    out = np.empty(4, np.float64)
    counterexample_values(1, 5)
    a_s_values(0.5, 1, 5)
    paper_example_values(1, 5)
    running_sums(np.ones(4), 0.0, 0.0, out)
    fold_sum(np.ones(4), 0.0, 0.0)
