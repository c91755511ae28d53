"""Sparse polynomial algebra on the unit sphere."""
