"""Sweep-kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
fallback is used. Set VUSMETRICS_BACKEND=python or =compiled to force a
choice (forcing the compiled backend raises if the extension is missing).
"""

from __future__ import annotations

import os

from .errors import UsageError


def _load():
    choice = os.environ.get("VUSMETRICS_BACKEND", "auto").strip().lower()
    if choice not in ("auto", "compiled", "python"):
        raise UsageError(
            f"VUSMETRICS_BACKEND must be auto, compiled or python, got {choice!r}"
        )
    if choice in ("auto", "compiled"):
        try:
            from . import _kernels

            return _kernels, "compiled"
        except ImportError:
            if choice == "compiled":
                raise
    from . import _kernels_py

    return _kernels_py, "python"


kernels, BACKEND_NAME = _load()


def get_backend() -> str:
    """Name of the active kernel backend: ``compiled`` or ``python``."""
    return BACKEND_NAME
