"""Singular factors of rational plane curves, computed exactly."""
__version__ = "0.1.0"
