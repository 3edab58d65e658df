"""Backend selection: compiled kernels when built, NumPy fallback otherwise.

``HCURVES_BACKEND=python|cython`` forces a choice for the whole process;
per-call ``backend=`` arguments override it.
"""

from __future__ import annotations

import os

from . import _pure

try:
    from . import _kernels
except ImportError:  # extension not built on this install
    _kernels = None

HAVE_KERNELS = _kernels is not None


def available_backends() -> tuple[str, ...]:
    return ("cython", "python") if HAVE_KERNELS else ("python",)


def default_backend() -> str:
    forced = os.environ.get("HCURVES_BACKEND", "").strip().lower()
    if forced:
        return forced
    return "cython" if HAVE_KERNELS else "python"


def get_backend(name: str | None = None):
    """Resolve a backend name ('auto', 'python', 'cython', None) to a module."""
    if name is None or name == "auto":
        name = default_backend()
    name = name.lower()
    if name == "python":
        return _pure
    if name == "cython":
        if not HAVE_KERNELS:
            raise RuntimeError("the compiled backend is not available on this install")
        return _kernels
    raise ValueError(f"unknown backend {name!r} (expected 'auto', 'python' or 'cython')")
