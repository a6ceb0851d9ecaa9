"""Gorenstein defect toolkit: exact homological algebra over F_p."""

__version__ = "0.1.0"
