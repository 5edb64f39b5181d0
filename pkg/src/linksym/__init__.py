"""Executable group theory for intrinsic symmetry groups of links."""

__version__ = "0.1.0"
