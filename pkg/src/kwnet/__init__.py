"""Keyword co-occurrence and author network construction with preprocessing sweeps."""

__version__ = "0.1.0"
