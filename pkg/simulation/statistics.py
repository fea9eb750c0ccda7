"""Statistics recorded along a run and functionals of whole trajectories.

Measure statistics are callables ``measure -> float`` recorded at every step.
Trajectory functionals are callables ``trajectory -> float`` used by the
Monte Carlo layer. Both are small dataclasses so they pickle cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass

from measures.measure import Atom, atom_weights, core_shape, evaluate
from measures.spaces import FullSpace, Index, Pair, Point, Real, colour_in


# Measure statistics --------------------------------------------------------------

@dataclass(frozen=True)
class Mass:
    """Total mass X_n(S)."""
    label: str = "mass"

    def __call__(self, mu) -> float:
        return mu.total


@dataclass(frozen=True)
class Evaluate:
    """Mass of a test set X_n(B)."""
    test_set: object = FullSpace()
    label: str = "evaluate"

    def __call__(self, mu) -> float:
        return evaluate(mu, self.test_set)


@dataclass(frozen=True)
class Fraction:
    """X_n(B) / X_n(S); zero for a stopped urn."""
    test_set: object = FullSpace()
    label: str = "fraction"

    def __call__(self, mu) -> float:
        if mu.total <= 0:
            return 0.0
        return evaluate(mu, self.test_set) / mu.total


@dataclass(frozen=True)
class DistinctAtoms:
    """Number of atomic components (distinct colours holding point mass)."""
    label: str = "distinct_atoms"

    def __call__(self, mu) -> float:
        return float(sum(1 for c in mu.components if isinstance(core_shape(c.shape), Atom)))


@dataclass(frozen=True)
class LargestAtomFraction:
    """Largest atom weight over total mass."""
    label: str = "largest_atom_fraction"

    def __call__(self, mu) -> float:
        weights = [c.weight for c in mu.components if isinstance(core_shape(c.shape), Atom)]
        if not weights or mu.total <= 0:
            return 0.0
        return max(weights) / mu.total


MEASURE_STATISTICS = {
    "mass": Mass,
    "evaluate": Evaluate,
    "fraction": Fraction,
    "distinct_atoms": DistinctAtoms,
    "largest_atom_fraction": LargestAtomFraction,
}

# Statistics that take a test set.
NEEDS_TEST_SET = {"evaluate", "fraction"}


def measure_statistic(name: str, test_set=None, label: str = None):
    """Build a measure statistic by name.

    Raises:
        ValueError: If the name is unknown or the test set is missing
    """
    if name not in MEASURE_STATISTICS:
        raise ValueError(f"Unknown statistic: {name}. Supported: {', '.join(sorted(MEASURE_STATISTICS))}")
    label = label or name
    if name in NEEDS_TEST_SET:
        if test_set is None:
            raise ValueError(f"Statistic {name} needs a test_set")
        return MEASURE_STATISTICS[name](test_set, label)
    return MEASURE_STATISTICS[name](label)


# Trajectory functionals ----------------------------------------------------------

@dataclass(frozen=True)
class Final:
    """A measure statistic of the last state X_n."""
    statistic: object

    @property
    def label(self) -> str:
        return self.statistic.label

    def __call__(self, trajectory) -> float:
        return self.statistic(trajectory.final)


@dataclass(frozen=True)
class DrawCount:
    """How many drawn colours fell in a test set."""
    test_set: object
    label: str = "draw_count"

    def __call__(self, trajectory) -> float:
        return float(sum(1 for c in trajectory.draws if colour_in(c, self.test_set)))


def _coordinate(colour, axis: int) -> float:
    if isinstance(colour, Point):
        return float(colour.coords[axis])
    if isinstance(colour, Index):
        return float(colour.k)
    if isinstance(colour, Real):
        return colour.x
    if isinstance(colour, Pair):
        return _coordinate(colour.base, axis)
    raise TypeError(f"Unknown colour: {colour!r}")


@dataclass(frozen=True)
class LastDrawCoordinate:
    """A coordinate of the most recently drawn colour."""
    axis: int = 0
    label: str = "last_draw"

    def __call__(self, trajectory) -> float:
        if not trajectory.draws:
            raise ValueError("Trajectory has no draws")
        return _coordinate(trajectory.draws[-1], self.axis)


@dataclass(frozen=True)
class FirstDrawAtomFraction:
    """Normalized weight of the atom at the first drawn colour in X_n.

    In the Blackwell-MacQueen urn this converges to the first size-biased
    stick-breaking weight, Beta(1, theta).
    """
    label: str = "first_draw_atom_fraction"

    def __call__(self, trajectory) -> float:
        final = trajectory.final
        if not trajectory.draws or final.total <= 0:
            return 0.0
        return atom_weights(final).get(trajectory.draws[0], 0.0) / final.total


@dataclass(frozen=True)
class Projected:
    """Apply a functional to the projection of a lifted trajectory."""
    functional: object

    @property
    def label(self) -> str:
        return self.functional.label

    def __call__(self, trajectory) -> float:
        return self.functional(trajectory.projected())
