"""Kernel backend selection.

The compiled Cython kernels are preferred when importable; otherwise the
numpy implementations are used.  Both produce bit-identical output, so
the choice only affects speed.  Set ``METADE_BACKEND=numpy`` or
``METADE_BACKEND=cython`` to force one (forcing an unavailable backend
raises at import of this module).
"""

from __future__ import annotations

import os

from . import _kernels_np

_forced = os.environ.get("METADE_BACKEND", "").strip().lower()

if _forced not in ("", "numpy", "cython"):
    raise ImportError(f"METADE_BACKEND must be 'numpy' or 'cython', got {_forced!r}")

if _forced == "numpy":
    kernels = _kernels_np
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]
    except ImportError:
        if _forced == "cython":
            raise ImportError(
                "METADE_BACKEND=cython but the compiled extension is not available; "
                "reinstall with a C toolchain or unset METADE_BACKEND"
            ) from None
        kernels = _kernels_np


def backend_name() -> str:
    """Name of the active kernel backend ('cython' or 'numpy')."""
    return kernels.BACKEND_NAME


def get_kernels(name: str | None = None):
    """Return a kernel module: the active one, or a specific one by name."""
    if name is None:
        return kernels
    if name == "numpy":
        return _kernels_np
    if name == "cython":
        from . import _kernels_cy

        return _kernels_cy
    raise ValueError(f"unknown backend {name!r}")
