"""JSON and CSV converters for urn configurations and results."""
