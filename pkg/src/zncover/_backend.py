"""Kernel backend selection.

The compiled extension is preferred when built; set ``ZNCOVER_BACKEND=python``
to force the pure-Python kernels or ``ZNCOVER_BACKEND=compiled`` to require
the extension.
"""

import os

_forced = os.environ.get("ZNCOVER_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _kernel_py as _impl
elif _forced == "compiled":
    from . import _kernel as _impl
else:
    try:
        from . import _kernel as _impl
    except ImportError:
        from . import _kernel_py as _impl

howell_reduce = _impl.howell_reduce
matmul = _impl.matmul
BACKEND = _impl.BACKEND
