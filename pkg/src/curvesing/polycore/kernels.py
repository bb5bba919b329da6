"""Backend selection for the integer polynomial kernels.

The compiled extension is used when it was built and importable; otherwise
the pure-Python twin is used.  Setting ``CURVESING_PURE_PYTHON=1`` forces
the fallback.
"""
import os

if os.environ.get("CURVESING_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as _impl
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl
        BACKEND = "python"

trim = _impl.trim
add = _impl.add
sub = _impl.sub
scale = _impl.scale
mul = _impl.mul
content = _impl.content
primitive = _impl.primitive
pseudo_divmod = _impl.pseudo_divmod
divexact = _impl.divexact
gcd = _impl.gcd
evaluate = _impl.evaluate
det = _impl.det
rank = _impl.rank
row_combine = _impl.row_combine

__all__ = [
    "BACKEND", "trim", "add", "sub", "scale", "mul", "content", "primitive",
    "pseudo_divmod", "divexact", "gcd", "evaluate", "det", "rank",
    "row_combine",
]
