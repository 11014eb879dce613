"""Pick the scalar-kernel implementation once, at import time.

The compiled ``_ckernels`` module is used when importable; setting
``FRACLAP_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels

kernels = _pykernels
BACKEND = "python"

if os.environ.get("FRACLAP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"
