"""Kernel dispatch: compiled extension when importable, else pure Python.

Set ``BROOKSLAB_PURE=1`` to force the fallback.  ``BACKEND`` names the
implementation in use.
"""
import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["compiled"] = _compiled

if _compiled is not None and os.environ.get("BROOKSLAB_PURE", "") not in ("1", "true", "yes"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]
list_color_search = _impl.list_color_search
wired_kruskal = _impl.wired_kruskal
