"""Twisted vertex algebras from bicharacters on Hopf algebras, with exact arithmetic."""
__version__ = "0.1.0"
