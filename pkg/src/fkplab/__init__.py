"""Spectral numerical laboratory for the fractional KdV/KP equations."""

__version__ = "0.1.0"
