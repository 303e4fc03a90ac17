"""Kernel backend selection.

The compiled extension is preferred when present; set ``WEILNEAR_PURE=1``
to force the pure-Python implementation (used by the benchmark and by the
backend-agreement tests).
"""

import os

if os.environ.get("WEILNEAR_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
build_table = _impl.build_table
ael_mul = _impl.ael_mul
apoly_mul_terms = _impl.apoly_mul_terms
