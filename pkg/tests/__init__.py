"""Tests for the spin-semiclassics package."""
