"""Spin Semiclassics - Berezin quantization of the sphere and mean-field spin chain semiclassics."""

__version__ = "1.0.0"
