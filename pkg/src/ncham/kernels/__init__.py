"""Word-rewriting kernels.

The compiled core is used when it was built; otherwise, or when
``NCHAM_PURE_PYTHON=1`` is set, the pure-Python implementation is used.
Both expose ``normal_order`` and ``leibniz_terms`` with identical results.
"""

import os

from . import _fallback

if os.environ.get("NCHAM_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

normal_order = _impl.normal_order
leibniz_terms = _impl.leibniz_terms
normal_order_random = _fallback.normal_order_random

__all__ = ["BACKEND", "normal_order", "leibniz_terms", "normal_order_random"]
