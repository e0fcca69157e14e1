"""Search kernels with a compiled fast path and a pure-Python fallback.

The compiled extension (``_cyk``, built from Cython) and the reference
implementation (``_pyk``) expose the same flat-array API and must produce
bit-identical results.  Selection happens once at import time:

* ``SNARKLAB_KERNELS=c``    require the compiled backend, raise if missing
* ``SNARKLAB_KERNELS=py``   force the pure-Python backend
* unset or ``auto``         compiled if available, else pure Python
"""
from __future__ import annotations

import os
from types import ModuleType

from .errors import KernelLimit, KernelTimeout

__all__ = [
    "KernelLimit",
    "KernelTimeout",
    "backend",
    "backend_name",
    "load_backend",
    "coloring_first",
    "coloring_enumerate",
    "flow_first",
    "bridges",
    "small_disconnecting_sets",
]


def load_backend(name: str) -> ModuleType:
    """Import a kernel backend by name ('c' or 'py')."""
    if name == "py":
        from . import _pyk

        return _pyk
    if name == "c":
        from . import _cyk  # type: ignore[attr-defined]

        return _cyk
    raise ValueError(f"unknown kernel backend {name!r}")


def _select() -> ModuleType:
    choice = os.environ.get("SNARKLAB_KERNELS", "auto").strip().lower()
    if choice in ("c", "py"):
        return load_backend(choice)
    if choice not in ("", "auto"):
        raise ValueError(f"SNARKLAB_KERNELS must be 'auto', 'c' or 'py', not {choice!r}")
    try:
        return load_backend("c")
    except ImportError:
        return load_backend("py")


backend = _select()
backend_name: str = backend.BACKEND_NAME

coloring_first = backend.coloring_first
coloring_enumerate = backend.coloring_enumerate
flow_first = backend.flow_first
bridges = backend.bridges
small_disconnecting_sets = backend.small_disconnecting_sets
