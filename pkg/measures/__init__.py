"""Finite and signed measures on colour spaces."""
