"""Select the kernel implementation at import time.

The compiled extension is preferred; set ``TWOATOM_PURE_PYTHON=1`` to force
the pure-Python fallback.
"""

import os

if os.environ.get("TWOATOM_PURE_PYTHON", "").strip() not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND
