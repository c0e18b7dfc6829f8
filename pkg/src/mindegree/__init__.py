"""Minimal faithful permutation degrees of finite groups."""

__version__ = "0.1.0"
