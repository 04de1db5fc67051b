"""Kernel backend selection.

The compiled extension is preferred when present; the pure-Python twin is
used otherwise, or when the environment variable ``GAMMARES_PURE`` is set
to a non-empty value.  Both expose the same ``w_scalar`` / ``w_many`` /
``w_polish`` trio.
"""

import os

from . import _wpure

if os.environ.get("GAMMARES_PURE"):
    _impl = _wpure
else:
    try:
        from . import _wcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _wpure

BACKEND = _impl.BACKEND_NAME
w_scalar = _impl.w_scalar
w_many = _impl.w_many
w_polish = _impl.w_polish


def get_backend(name=None):
    """Return a kernel module by name ('compiled', 'python' or None for
    the active one); used by the benchmark to time both."""
    if name is None or name == BACKEND:
        return _impl
    if name == "python":
        return _wpure
    if name == "compiled":
        from . import _wcore  # raises ImportError when not built

        return _wcore
    raise ValueError(f"unknown backend {name!r}")
