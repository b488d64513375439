"""Kernel backend selection.

The hot loops in :mod:`cesaro.kernels` exist twice: as numba ``@njit``
functions and as pure-numpy fallbacks.  The backend is picked once, at
import time, from the ``CESARO_BACKEND`` environment variable:

* ``auto`` (default) - use numba when it imports, else fall back to numpy;
* ``numba``          - require numba, raise if it is missing;
* ``numpy``          - force the pure-numpy path even when numba is present.

Both backends compute the same quantities; results may differ in the last
few floating-point bits because the numpy fallback accumulates in chunks.
For a fixed backend every run is deterministic.
"""

import os

_CHOICES = ("auto", "numba", "numpy")


def _select() -> bool:
    mode = os.environ.get("CESARO_BACKEND", "auto").strip().lower() or "auto"
    if mode not in _CHOICES:
        raise RuntimeError(
            f"CESARO_BACKEND must be one of {_CHOICES}, got {mode!r}"
        )
    if mode == "numpy":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        if mode == "numba":
            raise
        return False
    return True


NUMBA_ENABLED: bool = _select()


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
