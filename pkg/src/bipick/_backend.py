"""Backend selection for the hot numeric kernels.

Two implementations of every kernel exist: a numba-compiled one and a pure
numpy one.  The numba path is the default whenever numba imports; setting the
environment variable ``PICK_NUMBA=0`` (before import) forces the numpy path.
The choice is made once at import time so a process runs one backend
throughout, which keeps output bit-reproducible for a fixed configuration.
"""

from __future__ import annotations

import os

_FALSY = {"0", "false", "off", "no"}


def _numba_requested() -> bool:
    return os.environ.get("PICK_NUMBA", "1").strip().lower() not in _FALSY


NUMBA_AVAILABLE = False
if _numba_requested():
    try:
        import numba  # noqa: F401

        NUMBA_AVAILABLE = True
    except ImportError:
        NUMBA_AVAILABLE = False

#: "numba" or "numpy"; decided once at import.
BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"
