"""Tableau kernels for the exact simplex method.

The compiled kernel is used when it was built; otherwise, or when the
``GPTLAB_PURE_PYTHON`` environment variable is set to a non-empty value other
than ``0``, the pure-Python kernel is loaded. ``BACKEND`` names the one in
use. Both expose ``pivot``, ``bland``, ``OPTIMAL`` and ``UNBOUNDED``.
"""

import contextlib
import os

from . import _pytableau

if os.environ.get("GPTLAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pytableau
    BACKEND = "python"
else:
    try:
        from . import _ctableau as _impl
    except ImportError:
        _impl = _pytableau
        BACKEND = "python"
    else:
        BACKEND = "cython"

pivot = _impl.pivot
bland = _impl.bland
OPTIMAL = _impl.OPTIMAL
UNBOUNDED = _impl.UNBOUNDED


def available_backends():
    """Map backend name to kernel module for every kernel that imports."""
    found = {"python": _pytableau}
    try:
        from . import _ctableau
    except ImportError:
        pass
    else:
        found["cython"] = _ctableau
    return found


@contextlib.contextmanager
def use_backend(name):
    """Temporarily route the solver through the named kernel."""
    global pivot, bland, BACKEND
    impl = available_backends()[name]
    saved = pivot, bland, BACKEND
    pivot, bland, BACKEND = impl.pivot, impl.bland, name
    try:
        yield impl
    finally:
        pivot, bland, BACKEND = saved
