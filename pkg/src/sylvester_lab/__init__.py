"""Verification lab for Sylvester's four-point problem on random walks and bridges."""

__version__ = "0.1.0"
