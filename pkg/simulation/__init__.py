"""Urn processes, replicates and the derandomizing lift."""
