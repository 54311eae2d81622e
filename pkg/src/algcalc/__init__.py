"""Exact noncommutative differential calculus over Q(i)."""

__version__ = "0.1.0"
