"""Colour spaces, colours and the test sets measures can be evaluated on.

Four concrete encodings stand in for a general Borel colour space:
a finite set {0, ..., d-1}, the lattice Z^dim, the unit interval and the
product of any of these with [0,1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union


# Colours ---------------------------------------------------------------------

@dataclass(frozen=True)
class Index:
    """Colour k of a finite space."""
    k: int

    def __str__(self) -> str:
        return str(self.k)


@dataclass(frozen=True)
class Point:
    """Lattice point."""
    coords: Tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Real:
    """Point of the unit interval."""
    x: float

    def __str__(self) -> str:
        return repr(self.x)


@dataclass(frozen=True)
class Pair:
    """Colour (s, u) of a product space S x [0,1]."""
    base: "Colour"
    u: float

    def __str__(self) -> str:
        return f"({self.base}, {self.u!r})"


Colour = Union[Index, Point, Real, Pair]


# Spaces ----------------------------------------------------------------------

@dataclass(frozen=True)
class Finite:
    """Finite colour set {0, ..., d-1}."""
    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError(f"Finite space needs d >= 1, got {self.d!r}")

    @property
    def is_discrete(self) -> bool:
        return True

    def contains(self, colour) -> bool:
        return isinstance(colour, Index) and 0 <= colour.k < self.d

    def colours(self):
        """All colours of the space, in index order."""
        return [Index(k) for k in range(self.d)]

    def __str__(self) -> str:
        return f"Finite({self.d})"


@dataclass(frozen=True)
class Lattice:
    """Integer lattice Z^dim."""
    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"Lattice needs dim >= 1, got {self.dim!r}")

    @property
    def is_discrete(self) -> bool:
        return True

    def contains(self, colour) -> bool:
        return isinstance(colour, Point) and len(colour.coords) == self.dim

    def origin(self) -> Point:
        return Point((0,) * self.dim)

    def __str__(self) -> str:
        return f"Lattice({self.dim})"


@dataclass(frozen=True)
class UnitInterval:
    """The interval [0,1]."""

    @property
    def is_discrete(self) -> bool:
        return False

    def contains(self, colour) -> bool:
        return isinstance(colour, Real) and 0.0 <= colour.x <= 1.0

    def __str__(self) -> str:
        return "UnitInterval"


@dataclass(frozen=True)
class Product:
    """The product base x [0,1]; the second factor is always the unit interval."""
    base: "ColourSpace"

    @property
    def is_discrete(self) -> bool:
        return False

    def contains(self, colour) -> bool:
        return (isinstance(colour, Pair)
                and 0.0 <= colour.u <= 1.0
                and self.base.contains(colour.base))

    @property
    def depth(self) -> int:
        """Number of [0,1] factors stacked on the innermost space."""
        return 1 + (self.base.depth if isinstance(self.base, Product) else 0)

    @property
    def root(self) -> "ColourSpace":
        """The innermost non-product space."""
        return self.base.root if isinstance(self.base, Product) else self.base

    def __str__(self) -> str:
        return f"Product({self.base})"


ColourSpace = Union[Finite, Lattice, UnitInterval, Product]


def project_colour(colour):
    """Map a product colour (s, u) to s; other colours are returned unchanged."""
    return colour.base if isinstance(colour, Pair) else colour


# Test sets -------------------------------------------------------------------

@dataclass(frozen=True)
class FullSpace:
    """The whole colour space."""


@dataclass(frozen=True)
class ColourSet:
    """A finite set of colours."""
    colours: frozenset

    @classmethod
    def of(cls, *colours) -> "ColourSet":
        return cls(frozenset(colours))

    def contains(self, colour) -> bool:
        return colour in self.colours


@dataclass(frozen=True)
class IntervalUnion:
    """A finite union of closed intervals [a, b] inside [0,1]."""
    intervals: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        for a, b in self.intervals:
            if not 0.0 <= a <= b <= 1.0:
                raise ValueError(f"Interval [{a}, {b}] is not inside [0,1]")

    @classmethod
    def of(cls, *intervals) -> "IntervalUnion":
        return cls(tuple((float(a), float(b)) for a, b in intervals))

    def contains(self, x: float) -> bool:
        return any(a <= x <= b for a, b in self.intervals)

    def merged(self):
        """Disjoint, sorted intervals covering the same set."""
        out = []
        for a, b in sorted(self.intervals):
            if out and a <= out[-1][1]:
                out[-1] = (out[-1][0], max(out[-1][1], b))
            else:
                out.append((a, b))
        return out

    def length(self) -> float:
        """Lebesgue measure of the union."""
        return sum(b - a for a, b in self.merged())


@dataclass(frozen=True)
class ProductSet:
    """The rectangle base x interval inside S x [0,1]."""
    base: "TestSet"
    interval: IntervalUnion = IntervalUnion(((0.0, 1.0),))


TestSet = Union[FullSpace, ColourSet, IntervalUnion, ProductSet]


def colour_in(colour, test_set) -> bool:
    """Whether a single colour lies in a test set."""
    if isinstance(test_set, FullSpace):
        return True
    if isinstance(test_set, ColourSet):
        return test_set.contains(colour)
    if isinstance(test_set, IntervalUnion):
        return isinstance(colour, Real) and test_set.contains(colour.x)
    if isinstance(test_set, ProductSet):
        return (isinstance(colour, Pair)
                and test_set.interval.contains(colour.u)
                and colour_in(colour.base, test_set.base))
    raise TypeError(f"Unknown test set: {test_set!r}")
