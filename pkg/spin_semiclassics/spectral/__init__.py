"""Eigensolvers and spectral convergence checks."""
