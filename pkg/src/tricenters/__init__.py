"""Certified distance inequalities between the first 20 triangle centers."""

__version__ = "0.1.0"
