"""Exact and numeric tools for Shimura curves in Klein's icosahedral coordinates."""

__version__ = "0.1.0"
