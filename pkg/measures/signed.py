"""Signed atomic measures: replacements that may remove balls."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from measures.errors import NegativeMass, SpaceMismatch
from measures.measure import (
    Atom, Component, FiniteMeasure, merge_key, wrap_shape,
)
from measures.spaces import Product

# Atom weights in [-CLAMP, 0] after a removal are treated as exact zeros.
CLAMP = 1e-12


def _inner_space(space, lifts: int):
    for _ in range(lifts):
        if not isinstance(space, Product):
            raise SpaceMismatch(f"{space} has fewer than {lifts} product factors")
        space = space.base
    return space


@dataclass(frozen=True)
class SignedAtomicMeasure:
    """Finitely many signed point masses.

    With ``lifts = L`` each atom (c, w) stands for w * delta_c x lambda^L on
    ``space`` = base x [0,1]^L; colours then belong to the base space.
    """
    space: object
    atoms: Tuple[Tuple[object, float], ...] = ()
    lifts: int = 0

    @classmethod
    def of(cls, space, atoms, lifts: int = 0) -> "SignedAtomicMeasure":
        """Canonical form: equal colours merged, zero weights dropped.

        Args:
            space: Colour space of the measure
            atoms: Iterable of (colour, weight) or a {colour: weight} mapping
            lifts: Number of lambda factors
        """
        inner = _inner_space(space, lifts)
        pairs = atoms.items() if isinstance(atoms, dict) else atoms
        merged = {}
        for colour, weight in pairs:
            if not inner.contains(colour):
                raise SpaceMismatch(f"Colour {colour} is not in {inner}")
            if not math.isfinite(weight):
                raise ValueError(f"Atom weight must be finite, got {weight}")
            merged[colour] = merged.get(colour, 0.0) + float(weight)
        return cls(space, tuple((c, w) for c, w in merged.items() if w != 0.0), lifts)

    @property
    def total(self) -> float:
        """Signed total mass sigma(S)."""
        return math.fsum(w for _, w in self.atoms)

    def lifted(self) -> "SignedAtomicMeasure":
        """sigma x lambda on Product(space)."""
        return SignedAtomicMeasure(Product(self.space), self.atoms, self.lifts + 1)

    def __str__(self) -> str:
        suffix = "×λ" * self.lifts
        return "{" + ", ".join(f"δ{c}{suffix}:{w:+g}" for c, w in self.atoms) + "}"


def jordan(sigma: SignedAtomicMeasure):
    """Split sigma into its positive and negative parts.

    Returns:
        (positive, negative) finite measures with sigma = positive - negative
    """
    def part(sign):
        return FiniteMeasure.of(sigma.space, (
            Component(sign * w, wrap_shape(Atom(c), sigma.lifts))
            for c, w in sigma.atoms if sign * w > 0
        ))

    return part(1.0), part(-1.0)


def variation(sigma: SignedAtomicMeasure) -> float:
    """Total variation |sigma|(S)."""
    return math.fsum(abs(w) for _, w in sigma.atoms)


def add_signed(mu: FiniteMeasure, sigma: SignedAtomicMeasure) -> FiniteMeasure:
    """Atomwise mu + sigma.

    Removals may only hit existing atoms; weights that end in [-1e-12, 0]
    are clamped to zero and the atom is dropped.

    Raises:
        SpaceMismatch: If the spaces differ
        NegativeMass: If an atom would become negative
    """
    if mu.space != sigma.space:
        raise SpaceMismatch(f"Measures live on different spaces: {mu.space} vs {sigma.space}")
    weights = [c.weight for c in mu.components]
    shapes = [c.shape for c in mu.components]
    positions = {}
    for i, shape in enumerate(shapes):
        key = merge_key(shape)
        if key is not None:
            positions[key] = i
    for colour, w in sigma.atoms:
        shape = wrap_shape(Atom(colour), sigma.lifts)
        i = positions.get(merge_key(shape))
        if i is None:
            if w < 0:
                raise NegativeMass(colour, w)
            positions[merge_key(shape)] = len(weights)
            weights.append(w)
            shapes.append(shape)
            continue
        updated = weights[i] + w
        if updated < -CLAMP:
            raise NegativeMass(colour, updated)
        weights[i] = max(updated, 0.0)
    return FiniteMeasure(mu.space, tuple(
        Component(w, s) for w, s in zip(weights, shapes) if w > 0
    ))
