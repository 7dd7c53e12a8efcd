"""Exact workbench for extended affine root systems, their Weyl groups and Steinberg groups."""
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
