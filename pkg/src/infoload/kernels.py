"""Backend selection for the grid utility kernel.

The compiled extension is used when available; the numpy fallback is always
importable.  Set INFOLOAD_PURE_PYTHON=1 to force the fallback (used by the
benchmark and the backend-parity tests).
"""

import os

from infoload import _kernels_py

if os.environ.get("INFOLOAD_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from infoload import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
utility_grid = _impl.utility_grid


def pure_python_utility_grid(*args):
    """Always-available fallback, regardless of the selected backend."""
    return _kernels_py.utility_grid(*args)
