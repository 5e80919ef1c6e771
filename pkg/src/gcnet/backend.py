"""Selects the elimination kernel at import time.

The compiled extension is preferred when present; the pure NumPy twin is
the fallback.  Setting the environment variable ``GCNET_PURE_PYTHON`` to
a non-empty value forces the fallback, which is useful for benchmarking
and for debugging suspected kernel issues.
"""

from __future__ import annotations

import os

from . import _gfcore_py

if os.environ.get("GCNET_PURE_PYTHON"):
    _impl = _gfcore_py
else:
    try:
        from . import _gfcore as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _gfcore_py

rank_destructive = _impl.rank_destructive
rref_destructive = _impl.rref_destructive


def backend_name() -> str:
    """Either ``"compiled"`` or ``"python"``."""
    return _impl.BACKEND_NAME
