"""Output adapters for study tables, report streams and plot curves."""
