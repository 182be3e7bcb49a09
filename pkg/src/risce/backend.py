"""Kernel backend selection.

The compiled extension (``risce._kernels``) is preferred when it imported
successfully; otherwise the pure-numpy fallback (``risce._kernels_py``) is
used.  Set the environment variable ``RISCE_BACKEND`` to ``ext`` or
``python`` before import to force one, or call :func:`use` at runtime
(mainly for tests and benchmarks).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels
except ImportError:  # extension not built on this install
    _kernels = None

_BY_NAME = {"python": _kernels_py}
if _kernels is not None:
    _BY_NAME["ext"] = _kernels


def _initial():
    forced = os.environ.get("RISCE_BACKEND", "auto").lower()
    if forced == "auto":
        return _kernels if _kernels is not None else _kernels_py
    if forced not in _BY_NAME:
        raise ImportError(
            f"RISCE_BACKEND={forced!r} is not available "
            f"(choices: auto, {', '.join(sorted(_BY_NAME))})"
        )
    return _BY_NAME[forced]


_active = _initial()


def active():
    """The module providing the kernel implementations currently in use."""
    return _active


def name() -> str:
    return _active.NAME


def available() -> tuple[str, ...]:
    return tuple(sorted(_BY_NAME))


def use(backend_name: str):
    """Switch the active backend; returns the previously active module."""
    global _active
    if backend_name == "auto":
        previous = _active
        _active = _kernels if _kernels is not None else _kernels_py
        return previous
    if backend_name not in _BY_NAME:
        raise ValueError(
            f"unknown backend {backend_name!r}; available: {available()}"
        )
    previous = _active
    _active = _BY_NAME[backend_name]
    return previous
