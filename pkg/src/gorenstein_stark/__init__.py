"""Exterior biduals, Stark systems and Fitting ideals over finite Gorenstein rings."""

__version__ = "0.1.0"
