"""Utility modules: exceptions."""
