"""Exact lattice arithmetic, E8 root searches and Kodaira-type verdicts."""

__version__ = "0.1.0"
