"""Exact real and complex Waring rank of binary forms."""

__version__ = "0.1.0"
