"""Built-in urn models."""
