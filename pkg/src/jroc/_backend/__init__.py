"""Backend selection for the prediction kernels.

The compiled extension is preferred when importable; JROC_PURE_PYTHON=1 (or
any value other than 0) forces the numpy fallback. Both expose the same
functions and return bit-identical predictions.
"""
from __future__ import annotations

import os

from . import _purepy

if os.environ.get("JROC_PURE_PYTHON", "0") not in ("", "0"):
    _impl = _purepy
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _purepy

BACKEND_NAME: str = _impl.NAME
knn_predict = _impl.knn_predict
tree_predict = _impl.tree_predict
nb_predict = _impl.nb_predict

__all__ = ["BACKEND_NAME", "knn_predict", "tree_predict", "nb_predict"]
