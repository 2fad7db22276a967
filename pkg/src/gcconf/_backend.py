"""Kernel selection.

The compiled kernels are used when they imported and the scalar type is
``gmpy2.mpq``.  Set ``GCCONF_PURE_PYTHON=1`` to force the fallback.
"""

import os
from fractions import Fraction

try:
    from gmpy2 import mpq as Scalar
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Scalar = Fraction

from . import _pykernels

try:
    if Scalar is Fraction:
        raise ImportError("compiled kernels need gmpy2")
    from . import _ckernels
except ImportError:
    _ckernels = None


def _pick():
    if _ckernels is not None and not os.environ.get("GCCONF_PURE_PYTHON"):
        return _ckernels
    return _pykernels


kernels = _pick()


def name():
    return "cython" if kernels is _ckernels else "python"


def available():
    return ["python"] + (["cython"] if _ckernels is not None else [])


def use(which):
    """Switch kernels at runtime ("python" or "cython"); returns the previous name."""
    global kernels
    prev = name()
    if which == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        kernels = _ckernels
    elif which == "python":
        kernels = _pykernels
    else:
        raise ValueError(f"unknown backend {which!r}")
    return prev
