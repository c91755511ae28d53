"""Core engine, configuration, caching and scheduling modules."""
