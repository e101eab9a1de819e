"""One-dimensional nonlocal interface solver: kernels, assembly, studies and verification."""

__version__ = "0.1.0"
