"""Exact Gram determinants for cell modules of the Brauer algebra."""

__version__ = "0.1.0"
