"""Exact models of quantum virtual Grothendieck rings in a quantum torus."""

__version__ = "0.1.0"
