"""Equations over groups: free words, diagonal reduction, bounded solving and verbal subgroups."""

from ._kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
