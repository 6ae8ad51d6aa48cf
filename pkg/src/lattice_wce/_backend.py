"""Select the kernel implementation at import time.

The compiled Cython module is used when it was built; otherwise the numpy
fallback. Setting ``LATTICE_WCE_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _fallback

try:
    if os.environ.get("LATTICE_WCE_BACKEND", "").lower() == "python":
        raise ImportError("fallback forced by LATTICE_WCE_BACKEND")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

kernels: ModuleType = _compiled if _compiled is not None else _fallback
BACKEND = "compiled" if _compiled is not None else "python"


def get_kernels(name: str | None = None) -> ModuleType:
    """Kernel module by name: ``"compiled"``, ``"python"`` or None (active)."""
    if name is None:
        return kernels
    if name == "python":
        return _fallback
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def default_threads() -> int:
    env = os.environ.get("LATTICE_WCE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1
