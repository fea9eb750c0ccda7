"""Finite measures on colour spaces.

A measure is an immutable list of weighted components. A component is a point
mass (Atom), a continuous law from a named family (Continuous), or another
component multiplied by Lebesgue measure on [0,1] (LambdaProduct).

Build measures with ``FiniteMeasure.of`` (validates and merges equal atoms);
all operations return new measures.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterable, Tuple, Union

from measures.errors import (
    Incomparable, InvalidParams, NotProductSpace, SpaceMismatch,
    UnsupportedTestSet, ZeroMass,
)
from measures.families import family_probability, get_family
from measures.spaces import (
    ColourSet, FullSpace, IntervalUnion, Pair, Product, ProductSet, Real,
    UnitInterval, colour_in,
)


# Component shapes --------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    """Point mass at a colour."""
    colour: object


@dataclass(frozen=True)
class Continuous:
    """Probability law of a named family, see measures.families."""
    family: str
    params: Tuple[float, ...]


@dataclass(frozen=True)
class LambdaProduct:
    """inner x Lebesgue measure on the extra [0,1] coordinate."""
    inner: "Shape"


Shape = Union[Atom, Continuous, LambdaProduct]


@dataclass(frozen=True)
class Component:
    """A shape carrying a positive weight."""
    weight: float
    shape: Shape


def merge_key(shape):
    """Identity used to merge components, or None for unmergeable shapes.

    Atoms merge on exact colour equality; lambda products merge when their
    inner shapes would.
    """
    if isinstance(shape, Atom):
        return ("atom", shape.colour)
    if isinstance(shape, LambdaProduct):
        inner = merge_key(shape.inner)
        return None if inner is None else ("lambda", inner)
    return None


def core_shape(shape):
    """Strip every LambdaProduct wrapper."""
    while isinstance(shape, LambdaProduct):
        shape = shape.inner
    return shape


def wrap_shape(shape, lifts: int):
    """Wrap a shape in ``lifts`` LambdaProduct layers."""
    for _ in range(lifts):
        shape = LambdaProduct(shape)
    return shape


def _check_shape(space, shape):
    if isinstance(shape, Atom):
        if not space.contains(shape.colour):
            raise SpaceMismatch(f"Colour {shape.colour} is not in {space}")
    elif isinstance(shape, Continuous):
        if not isinstance(space, UnitInterval):
            raise SpaceMismatch(f"Continuous components live on UnitInterval, not {space}")
        family = get_family(shape.family)
        if len(shape.params) != len(family.param_names):
            raise InvalidParams(f"{shape.family} needs params {family.param_names}")
        family.check(shape.params)
    elif isinstance(shape, LambdaProduct):
        if not isinstance(space, Product):
            raise SpaceMismatch(f"Lambda products live on product spaces, not {space}")
        _check_shape(space.base, shape.inner)
    else:
        raise TypeError(f"Unknown component shape: {shape!r}")


def _merge(components: Iterable[Component]) -> Tuple[Component, ...]:
    weights = []
    shapes = []
    positions = {}
    for comp in components:
        key = merge_key(comp.shape)
        if key is not None and key in positions:
            weights[positions[key]] += comp.weight
            continue
        if key is not None:
            positions[key] = len(weights)
        weights.append(comp.weight)
        shapes.append(comp.shape)
    return tuple(Component(w, s) for w, s in zip(weights, shapes) if w > 0)


# Measures ------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteMeasure:
    """A finite nonnegative measure on a colour space."""
    space: object
    components: Tuple[Component, ...] = ()
    total: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "total", math.fsum(c.weight for c in self.components))

    @classmethod
    def of(cls, space, components: Iterable[Component] = ()) -> "FiniteMeasure":
        """Validate components against the space and merge equal atoms.

        Raises:
            ValueError: If a weight is negative or not finite
            SpaceMismatch: If a component does not belong to the space
        """
        components = tuple(components)
        for comp in components:
            if not math.isfinite(comp.weight) or comp.weight < 0:
                raise ValueError(f"Component weight must be finite and nonnegative, got {comp.weight}")
            _check_shape(space, comp.shape)
        return cls(space, _merge(components))

    @classmethod
    def empty(cls, space) -> "FiniteMeasure":
        return cls(space, ())

    @classmethod
    def atomic(cls, space, weights) -> "FiniteMeasure":
        """Measure with the given {colour: weight} point masses."""
        return cls.of(space, (Component(float(w), Atom(c)) for c, w in dict(weights).items()))

    @classmethod
    def continuous(cls, space, weight: float, family: str, params) -> "FiniteMeasure":
        """weight times a single family law."""
        return cls.of(space, [Component(float(weight), Continuous(family, tuple(float(p) for p in params)))])

    @property
    def is_zero(self) -> bool:
        return not self.components

    def __str__(self) -> str:
        parts = [f"{_shape_str(c.shape)}:{c.weight:g}" for c in self.components]
        return "{" + ", ".join(parts) + "}"


def _shape_str(shape) -> str:
    if isinstance(shape, Atom):
        return f"δ{shape.colour}"
    if isinstance(shape, Continuous):
        return f"{shape.family}{tuple(shape.params)}"
    return f"({_shape_str(shape.inner)})×λ"


def _same_space(mu: FiniteMeasure, nu: FiniteMeasure):
    if mu.space != nu.space:
        raise SpaceMismatch(f"Measures live on different spaces: {mu.space} vs {nu.space}")


def total_mass(mu: FiniteMeasure) -> float:
    """Total mass mu(S)."""
    return mu.total


def add(mu: FiniteMeasure, nu: FiniteMeasure) -> FiniteMeasure:
    """Sum of two measures on the same space.

    Raises:
        SpaceMismatch: If the spaces differ
    """
    _same_space(mu, nu)
    if nu.is_zero:
        return mu
    if mu.is_zero:
        return nu
    return FiniteMeasure(mu.space, _merge(mu.components + nu.components))


def scale(mu: FiniteMeasure, factor: float) -> FiniteMeasure:
    """Multiply every weight by a positive factor."""
    if factor <= 0:
        raise ValueError("Scale factor must be positive")
    return FiniteMeasure(mu.space, tuple(Component(c.weight * factor, c.shape) for c in mu.components))


def normalize(mu: FiniteMeasure) -> FiniteMeasure:
    """The probability measure mu / mu(S).

    Raises:
        ZeroMass: If mu is the zero measure
    """
    if mu.total <= 0:
        raise ZeroMass("Cannot normalize the zero measure")
    return scale(mu, 1.0 / mu.total)


def sample(mu: FiniteMeasure, uniforms, outer_u: float = None):
    """Draw a colour from mu / mu(S).

    The first uniform selects a component by cumulative weight; the rest are
    consumed, in order, by sampling inside the component. When ``outer_u`` is
    given it becomes the [0,1] coordinate of an outermost lambda product.

    Args:
        mu: Nonzero measure
        uniforms: Iterable of uniforms in [0,1)
        outer_u: Optional value for the outermost product coordinate

    Returns:
        The drawn colour

    Raises:
        ZeroMass: If mu is the zero measure
        ValueError: If the uniforms run out
    """
    if mu.is_zero:
        raise ZeroMass("Cannot sample from the zero measure")
    it = iter(uniforms)
    cumulative = list(accumulate(c.weight for c in mu.components))
    index = bisect_right(cumulative, _next(it) * cumulative[-1])
    shape = mu.components[min(index, len(cumulative) - 1)].shape
    return _sample_shape(shape, it, outer_u)


def _next(it) -> float:
    try:
        return next(it)
    except StopIteration:
        raise ValueError("Ran out of uniforms while sampling (component nesting too deep)") from None


def _sample_shape(shape, it, outer_u):
    if isinstance(shape, Atom):
        return shape.colour
    if isinstance(shape, Continuous):
        return Real(get_family(shape.family).sample(shape.params, _next(it)))
    base = _sample_shape(shape.inner, it, None)
    u = outer_u if outer_u is not None else _next(it)
    return Pair(base, u)


def _check_test_set(space, test_set):
    if isinstance(test_set, (FullSpace, ColourSet)):
        return
    if isinstance(test_set, IntervalUnion) and isinstance(space, UnitInterval):
        return
    if isinstance(test_set, ProductSet) and isinstance(space, Product):
        _check_test_set(space.base, test_set.base)
        return
    raise UnsupportedTestSet(f"Test set {test_set!r} is not in the family declared for {space}")


def _shape_mass(shape, test_set) -> float:
    if isinstance(test_set, FullSpace):
        return 1.0
    if isinstance(shape, Atom):
        return 1.0 if colour_in(shape.colour, test_set) else 0.0
    if isinstance(shape, Continuous):
        return family_probability(shape.family, shape.params, test_set)
    if isinstance(test_set, ColourSet):
        return 0.0
    if isinstance(test_set, ProductSet):
        return _shape_mass(shape.inner, test_set.base) * test_set.interval.length()
    raise UnsupportedTestSet(f"Cannot evaluate {_shape_str(shape)} on {test_set!r}")


def evaluate(mu: FiniteMeasure, test_set) -> float:
    """Exact mass mu(B) of a test set.

    Raises:
        UnsupportedTestSet: If B is outside the space's test family
    """
    _check_test_set(mu.space, test_set)
    return math.fsum(c.weight * _shape_mass(c.shape, test_set) for c in mu.components)


def product_with_uniform(mu: FiniteMeasure) -> FiniteMeasure:
    """mu x lambda on Product(space); weights and order are kept."""
    return FiniteMeasure(
        Product(mu.space),
        tuple(Component(c.weight, LambdaProduct(c.shape)) for c in mu.components),
    )


def project(mu: FiniteMeasure) -> FiniteMeasure:
    """Push-forward along (s, u) -> s.

    Raises:
        NotProductSpace: If mu does not live on a product space
    """
    if not isinstance(mu.space, Product):
        raise NotProductSpace(f"Cannot project a measure on {mu.space}")
    projected = []
    for comp in mu.components:
        shape = comp.shape
        if isinstance(shape, LambdaProduct):
            projected.append(Component(comp.weight, shape.inner))
        else:
            projected.append(Component(comp.weight, Atom(shape.colour.base)))
    return FiniteMeasure(mu.space.base, _merge(projected))


def is_product_form(mu: FiniteMeasure) -> bool:
    """Whether every component is a lambda product (mu = project(mu) x lambda)."""
    return all(isinstance(c.shape, LambdaProduct) for c in mu.components)


def atom_weights(mu: FiniteMeasure) -> dict:
    """{colour: weight} for the plain atoms of mu."""
    return {c.shape.colour: c.weight for c in mu.components if isinstance(c.shape, Atom)}


def _split(mu: FiniteMeasure):
    atoms = {}
    rest = []
    for comp in mu.components:
        key = merge_key(comp.shape)
        if key is None:
            rest.append(comp)
        else:
            atoms[key] = atoms.get(key, 0.0) + comp.weight
    return atoms, rest


def _weights_close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b))


def approx_equal(mu: FiniteMeasure, nu: FiniteMeasure, tol: float = 1e-9) -> bool:
    """Compare two measures with a relative weight tolerance.

    Atomic parts are compared colour by colour; continuous parts must have
    the same structure.

    Raises:
        Incomparable: If the continuous parts differ in structure
    """
    if mu.space != nu.space:
        return False
    atoms_mu, rest_mu = _split(mu)
    atoms_nu, rest_nu = _split(nu)
    if [c.shape for c in rest_mu] != [c.shape for c in rest_nu]:
        raise Incomparable("Continuous parts differ in structure")
    if atoms_mu.keys() != atoms_nu.keys():
        return False
    pairs = [(atoms_mu[k], atoms_nu[k]) for k in atoms_mu]
    pairs += [(a.weight, b.weight) for a, b in zip(rest_mu, rest_nu)]
    return all(_weights_close(a, b, tol) for a, b in pairs)


def max_weight_error(mu: FiniteMeasure, nu: FiniteMeasure) -> float:
    """Largest absolute weight difference between matching components.

    Raises:
        Incomparable: If the continuous parts differ in structure
    """
    atoms_mu, rest_mu = _split(mu)
    atoms_nu, rest_nu = _split(nu)
    if [c.shape for c in rest_mu] != [c.shape for c in rest_nu]:
        raise Incomparable("Continuous parts differ in structure")
    errors = [abs(atoms_mu.get(k, 0.0) - atoms_nu.get(k, 0.0)) for k in atoms_mu.keys() | atoms_nu.keys()]
    errors += [abs(a.weight - b.weight) for a, b in zip(rest_mu, rest_nu)]
    return max(errors, default=0.0)
