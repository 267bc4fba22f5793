"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; setting
``TSIX_PURE_PYTHON=1`` forces the pure-Python reference implementation
(used by the benchmark and by CI environments without a C toolchain).
"""

from __future__ import annotations

import os

from . import pyref
from .pyref import pack_paths

try:
    from . import _native  # type: ignore[attr-defined]
except ImportError:
    _native = None

if _native is not None and not os.environ.get("TSIX_PURE_PYTHON"):
    _backend = _native
    BACKEND = "native"
else:
    _backend = pyref
    BACKEND = "pure-python"

lower_bound = _backend.lower_bound
slca_candidates = _backend.slca_candidates
evaluate_join = _backend.evaluate_join

__all__ = ["BACKEND", "lower_bound", "slca_candidates", "evaluate_join", "pack_paths", "pyref"]
