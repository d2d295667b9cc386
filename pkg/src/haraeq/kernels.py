"""Backend selection for the float hot paths.

The compiled extension is preferred when it imported cleanly; set
HARAEQ_PURE_PYTHON=1 to force the fallback (the benchmark uses this to
compare the two).  Both backends expose the same functions with
identical semantics.
"""

import os

if os.environ.get("HARAEQ_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
zx_value = _impl.zx_value
zx_grid = _impl.zx_grid
zx_refine = _impl.zx_refine
poly_eval = _impl.poly_eval
poly_eval_grid = _impl.poly_eval_grid
poly_refine = _impl.poly_refine

__all__ = [
    "BACKEND", "zx_value", "zx_grid", "zx_refine",
    "poly_eval", "poly_eval_grid", "poly_refine",
]
