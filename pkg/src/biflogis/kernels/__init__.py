"""Hot numerical kernels with a compiled core and a pure NumPy fallback.

The compiled extension ``_native`` (Cython) is preferred when it built;
otherwise the package falls back to ``pure`` silently. Set the environment
variable ``BIFLOGIS_PURE=1`` before import to force the fallback, e.g. for
benchmarking or debugging. ``IMPLEMENTATION`` records which one is active.
"""

from __future__ import annotations

import os

from . import pure

if os.environ.get("BIFLOGIS_PURE") == "1":
    _impl = pure
    IMPLEMENTATION = "pure"
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]
        IMPLEMENTATION = "native"
    except ImportError:
        _impl = pure
        IMPLEMENTATION = "pure"

c_factor = _impl.c_factor
layer_integrand = _impl.layer_integrand
rk4_shoot = _impl.rk4_shoot

__all__ = ["c_factor", "layer_integrand", "rk4_shoot", "IMPLEMENTATION", "pure"]
