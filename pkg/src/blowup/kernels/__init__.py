"""Hot monomial kernels with two interchangeable backends.

The default backend is numba-jitted loops; setting the environment variable
``BLOWUP_PURE_NUMPY=1`` (or any nonempty value other than ``0``) before import
selects the pure-numpy fallback, which is also used automatically when numba
is unavailable.  ``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

from . import _numpy

_FORCE_NUMPY = os.environ.get("BLOWUP_PURE_NUMPY", "0") not in ("", "0")

if not _FORCE_NUMPY:
    try:
        from . import _numba as _impl

        BACKEND = "numba"
    except ImportError:
        _impl = _numpy
        BACKEND = "numpy"
else:
    _impl = _numpy
    BACKEND = "numpy"


def backend_name() -> str:
    return BACKEND


minimal_mask = _impl.minimal_mask
divides_any = _impl.divides_any
staircase_count_2d = _impl.staircase_count_2d

__all__ = ["backend_name", "minimal_mask", "divides_any", "staircase_count_2d", "BACKEND"]
