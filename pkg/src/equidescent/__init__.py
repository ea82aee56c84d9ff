"""Descent of polynomial systems with transcendental coefficients to algebraic ones."""

__version__ = "0.1.0"
