"""Numba switch.

Hot kernels are compiled with :func:`numba.njit` unless the environment
variable ``CUBICTSP_DISABLE_NUMBA`` is set to a truthy value, or numba is not
importable. In either case the pure-numpy implementations in
:mod:`cubictsp.kernels` are used instead.
"""

from __future__ import annotations

import os

_FALSY = {"", "0", "false", "no", "off"}


def _env_disabled() -> bool:
    return os.environ.get("CUBICTSP_DISABLE_NUMBA", "").strip().lower() not in _FALSY


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and not _env_disabled()


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, else identity.

    Decoration is independent of ``USE_NUMBA`` so both kernel flavours stay
    callable side by side (the parity tests and the benchmark rely on it).
    """
    if _numba is None:
        return func
    return _numba.njit(cache=True)(func)
