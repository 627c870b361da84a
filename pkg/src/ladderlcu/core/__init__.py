"""Numerical kernels, constants and exceptions for ladderlcu."""
