"""Kernel selection: the compiled extension when present, else pure Python.

Set ``EXAFFINE_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"

if os.environ.get("EXAFFINE_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import mat_add, mat_mul, poly_add, poly_mul, poly_mul_into, poly_scale, poly_sub
else:
    try:
        from ._kernels import mat_add, mat_mul, poly_add, poly_mul, poly_mul_into, poly_scale, poly_sub

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import mat_add, mat_mul, poly_add, poly_mul, poly_mul_into, poly_scale, poly_sub

__all__ = ["BACKEND", "mat_add", "mat_mul", "poly_add", "poly_mul", "poly_mul_into", "poly_scale", "poly_sub"]
