"""Kernel dispatch: numba-jitted hot loops with a fallback path.

HOMALG_NO_NUMBA=1 (or a missing numba) selects the fallback kernels; the
flag is read once at import.  Callers can also consult NUMBA_ENABLED to
pick the exactness path (see homcount).
"""

import os

_flag = os.environ.get("HOMALG_NO_NUMBA", "").strip().lower()
NUMBA_ENABLED = _flag not in {"1", "true", "yes", "on"}

if NUMBA_ENABLED:
    try:
        from . import _kernels_jit as _jit
    except ImportError:
        NUMBA_ENABLED = False
        _jit = None
else:
    _jit = None

from . import _kernels_py as _py  # noqa: E402

jit_brute_force_count = _jit.brute_force_count if _jit is not None else None
jit_backtrack_count = _jit.backtrack_count if _jit is not None else None
jit_power_adjacency = _jit.power_adjacency if _jit is not None else None

py_brute_force_count = _py.brute_force_count
py_backtrack_count = _py.backtrack_count
py_power_adjacency = _py.power_adjacency
