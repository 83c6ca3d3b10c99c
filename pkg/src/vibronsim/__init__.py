"""Exact-diagonalization simulator of two-dimensional bending vibrations
realized on a spin-1 condensate."""

__version__ = "0.1.0"
