"""Numba switch.

Hot kernels are written as plain loops over numpy arrays and compiled with
``numba.njit`` when available.  Setting ``LQUASI_DISABLE_NUMBA=1`` in the
environment (read once, at import) leaves them as interpreted Python and makes
the batch sweeps use their vectorized numpy variants instead.
"""
from __future__ import annotations

import os

_DISABLED = os.environ.get("LQUASI_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    import numba as _numba
except ImportError:
    _numba = None

NUMBA_ENABLED = _numba is not None


def jit(func=None, **kwargs):
    """``numba.njit(cache=True)`` when enabled, identity otherwise."""
    def wrap(f):
        if not NUMBA_ENABLED:
            return f
        opts = {"cache": True}
        opts.update(kwargs)
        return _numba.njit(**opts)(f)

    if func is not None:
        return wrap(func)
    return wrap


def backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
