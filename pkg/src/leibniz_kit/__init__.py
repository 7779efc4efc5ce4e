"""Exact computations with Leibniz algebras over the rationals."""

__all__ = ['__version__']

__version__ = '0.1.0'
