"""Certified precovers and preenvelopes of chain complexes over Z/n."""

from ._backend import BACKEND as kernel_backend
from .ringlinalg import MatrixZn, RingSpec

__version__ = "0.1.0"

__all__ = ["RingSpec", "MatrixZn", "kernel_backend", "__version__"]
