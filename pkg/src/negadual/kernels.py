"""Kernel dispatch: the compiled extension when importable, else numpy.

Set ``NEGADUAL_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
if not os.environ.get("NEGADUAL_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _pykernels
else:
    _impl = _pykernels

min_weight_chunk = _impl.min_weight_chunk
first_rank_deficient_subset = _impl.first_rank_deficient_subset
