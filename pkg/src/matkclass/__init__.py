"""Equivariant K-classes and Chow classes of matroids."""
__version__ = "0.1.0"
