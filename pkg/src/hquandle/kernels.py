"""Kernel dispatch: the compiled core when it is built, else pure Python.

Set ``HQUANDLE_PURE_PYTHON=1`` to force the fallback.  ``BACKEND`` names
the implementation in use.
"""

import os

from . import _pykernels

if os.environ.get("HQUANDLE_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

search_colorings = _impl.search_colorings
rref_mod_p = _impl.rref_mod_p
