"""Exact symbolic computation for KLR (quiver Hecke) algebras of loop-free quivers."""

__version__ = "0.1.0"
