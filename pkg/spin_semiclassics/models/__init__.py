"""Pydantic data models for model specifications and reports."""
