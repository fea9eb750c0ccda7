"""Replacement kernels for measure-valued urns."""
