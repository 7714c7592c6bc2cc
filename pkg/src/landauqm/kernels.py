"""Backend selection for the hot loops.

The compiled extension is used when it imports; ``LANDAUQM_PURE_PYTHON=1``
forces the NumPy/pure-Python fallback.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("LANDAUQM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def backends():
    """Available kernel modules by name."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels as compiled
    except ImportError:
        pass
    else:
        found["cython"] = compiled
    return found


def fd_axis(f, axis: int, order: int, h: float, backend=None):
    impl = backends()[backend] if backend else _impl
    if order not in (0, 1, 2):
        raise ValueError(f"stencil order must be 0, 1 or 2, got {order}")
    return impl.fd_axis(np.ascontiguousarray(f, dtype=np.complex128), int(axis), int(order), float(h))


def rk4_linear(m, s0, dt: float, steps: int, backend=None):
    impl = backends()[backend] if backend else _impl
    m = np.ascontiguousarray(m, dtype=np.float64)
    s0 = np.ascontiguousarray(s0, dtype=np.float64)
    return impl.rk4_linear(m, s0, float(dt), int(steps))
