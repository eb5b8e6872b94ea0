"""Exact computations for singular twin groups and their local representations."""

__version__ = "0.1.0"
