"""Hot word kernels: compiled extension when available, pure Python otherwise.

Set ``GEW_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("GEW_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND: str = _active.BACKEND
reduce_syllables = _active.reduce_syllables
mul_syllables = _active.mul_syllables
free_reduce = _active.free_reduce
cyclic_core = _active.cyclic_core
dehn_reduce = _active.dehn_reduce
dehn_is_trivial = _active.dehn_is_trivial

__all__ = [
    "BACKEND",
    "compiled_backend",
    "python_backend",
    "reduce_syllables",
    "mul_syllables",
    "free_reduce",
    "cyclic_core",
    "dehn_reduce",
    "dehn_is_trivial",
]
