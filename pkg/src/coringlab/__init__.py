"""Grouplike elements and first cohomology of the coring A (x) H for small
explicit comodule algebras."""

__version__ = "0.1.0"
