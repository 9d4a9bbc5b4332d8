"""Kernel backend selection.

The same-symbol pair scan is the hot inner loop of both the validity checker
and the decoder's cache-membership audit.  A compiled extension is used when
it was built; otherwise a vectorised numpy implementation takes over.  Both
return identical results in identical order.

Set PDAKIT_BACKEND=python or PDAKIT_BACKEND=compiled to pin a backend.
"""

import os

from . import pyscan

try:
    from . import cscan as _cscan
except ImportError:
    _cscan = None

_forced = os.environ.get("PDAKIT_BACKEND")
if _forced == "python":
    _active = pyscan
elif _forced == "compiled":
    if _cscan is None:
        raise ImportError("PDAKIT_BACKEND=compiled but the extension is not built")
    _active = _cscan
elif _forced:
    raise ImportError(f"unknown PDAKIT_BACKEND value {_forced!r}")
else:
    _active = _cscan if _cscan is not None else pyscan


def backend_name() -> str:
    return "compiled" if _active is _cscan else "python"


def available_backends() -> tuple[str, ...]:
    return ("python", "compiled") if _cscan is not None else ("python",)


def set_backend(name: str) -> None:
    """Switch the active backend; used by tests and the benchmark."""
    global _active
    if name == "python":
        _active = pyscan
    elif name == "compiled":
        if _cscan is None:
            raise ValueError("compiled backend is not built")
        _active = _cscan
    else:
        raise ValueError(f"unknown backend {name!r}")


def c3_pair_scan(grid, rows, cols, starts):
    """List (code, j1, k1, j2, k2) for every violating same-symbol pair.

    code 0: the pair shares a row or a column; code 1: one of the two cross
    cells of the rectangle spanned by the pair is not a star.  ``rows`` and
    ``cols`` hold the non-star cells grouped by symbol; ``starts`` bounds the
    groups.  All indices are 0-based.
    """
    return _active.c3_pair_scan(grid, rows, cols, starts)
