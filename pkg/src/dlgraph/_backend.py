"""Pick the compiled kernels when built, else the pure-Python ones.

Set ``DLGRAPH_PURE_PYTHON=1`` to force the fallback.
"""
import os

from dlgraph import _kernels_py

if os.environ.get("DLGRAPH_PURE_PYTHON"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from dlgraph import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"
