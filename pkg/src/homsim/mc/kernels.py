"""Kernel backend selection.

The compiled extension is preferred when present; set ``HOMSIM_KERNEL`` to
``python`` or ``cython`` to force a backend explicitly.
"""

import os

from ..errors import ConfigurationError
from . import kernel_py


def _load_backend():
    choice = os.environ.get("HOMSIM_KERNEL", "").strip().lower()
    if choice == "python":
        return kernel_py
    if choice == "cython":
        from . import _kernel  # raises if the extension was not built

        return _kernel
    if choice not in ("", "auto"):
        raise ConfigurationError(
            f"HOMSIM_KERNEL must be 'python' or 'cython', got {choice!r}"
        )
    try:
        from . import _kernel
    except ImportError:
        return kernel_py
    return _kernel


_backend = _load_backend()


def kernel_backend():
    """Name of the active kernel backend ('python' or 'cython')."""
    return _backend.BACKEND_NAME


def active_kernel():
    """The active backend module exposing ``simulate_active_stratum``."""
    return _backend
