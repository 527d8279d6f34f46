"""Kernel dispatch: the compiled extension when it imports, else pure Python.

Set ``WEYLFORGE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("WEYLFORGE_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as _impl

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

axpy = _impl.axpy
reduce_vector = _impl.reduce_vector
series_mul = _impl.series_mul
