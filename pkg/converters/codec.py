"""JSON encodings of spaces, colours, measures and test sets.

Spaces:     {"finite": d} | {"lattice": dim} | "unit_interval" | {"product": space}
Colours:    int (finite) | [ints] (lattice) | float (unit interval) | {"base": colour, "u": float}
Components: {"w": weight, "atom": colour} | {"w": weight, "family": name, "params": [...]}
            | {"w": weight, "product_lambda": {inner component without "w"}}
Test sets:  "full" | {"colours": [...]} | {"intervals": [[a, b], ...]}
            | {"product": test set, "interval": [[a, b], ...]}
"""

from measures.errors import ConfigError
from measures.measure import Atom, Component, Continuous, FiniteMeasure, LambdaProduct
from measures.spaces import (
    ColourSet, Finite, FullSpace, Index, IntervalUnion, Lattice, Pair, Point,
    Product, ProductSet, Real, UnitInterval,
)


def _expect(value, kind, what):
    if not isinstance(value, kind) or (isinstance(value, bool) and kind is not bool):
        raise ConfigError(f"{what} must be a JSON {kind.__name__}, got {value!r}")
    return value


# Spaces ----------------------------------------------------------------------------

def encode_space(space):
    if isinstance(space, Finite):
        return {"finite": space.d}
    if isinstance(space, Lattice):
        return {"lattice": space.dim}
    if isinstance(space, UnitInterval):
        return "unit_interval"
    if isinstance(space, Product):
        return {"product": encode_space(space.base)}
    raise TypeError(f"Unknown space: {space!r}")


def decode_space(data):
    """Colour space from its JSON form.

    Raises:
        ConfigError: If the encoding is not one of the four space forms
    """
    if data == "unit_interval":
        return UnitInterval()
    if isinstance(data, dict) and len(data) == 1:
        (kind, value), = data.items()
        try:
            if kind == "finite":
                return Finite(_expect(value, int, "finite"))
            if kind == "lattice":
                return Lattice(_expect(value, int, "lattice"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if kind == "product":
            return Product(decode_space(value))
    raise ConfigError(f"Unknown space encoding: {data!r}")


# Colours ---------------------------------------------------------------------------

def encode_colour(colour):
    if isinstance(colour, Index):
        return colour.k
    if isinstance(colour, Point):
        return list(colour.coords)
    if isinstance(colour, Real):
        return colour.x
    if isinstance(colour, Pair):
        return {"base": encode_colour(colour.base), "u": colour.u}
    raise TypeError(f"Unknown colour: {colour!r}")


def decode_colour(space, data):
    """Colour of ``space`` from its JSON form.

    Raises:
        ConfigError: If the value does not encode a colour of the space
    """
    if isinstance(space, Finite) and isinstance(data, int) and not isinstance(data, bool):
        colour = Index(data)
    elif isinstance(space, Lattice) and isinstance(data, list) and all(isinstance(c, int) for c in data):
        colour = Point(tuple(data))
    elif isinstance(space, UnitInterval) and isinstance(data, (int, float)) and not isinstance(data, bool):
        colour = Real(float(data))
    elif isinstance(space, Product) and isinstance(data, dict) and set(data) == {"base", "u"}:
        colour = Pair(decode_colour(space.base, data["base"]), float(data["u"]))
    else:
        raise ConfigError(f"{data!r} does not encode a colour of {space}")
    if not space.contains(colour):
        raise ConfigError(f"Colour {colour} is not in {space}")
    return colour


# Measures --------------------------------------------------------------------------

def _encode_shape(shape) -> dict:
    if isinstance(shape, Atom):
        return {"atom": encode_colour(shape.colour)}
    if isinstance(shape, Continuous):
        return {"family": shape.family, "params": list(shape.params)}
    return {"product_lambda": _encode_shape(shape.inner)}


def _decode_shape(space, data):
    _expect(data, dict, "component")
    if "atom" in data:
        return Atom(decode_colour(space, data["atom"]))
    if "family" in data:
        params = _expect(data.get("params", []), list, "params")
        return Continuous(str(data["family"]), tuple(float(p) for p in params))
    if "product_lambda" in data:
        if not isinstance(space, Product):
            raise ConfigError(f"product_lambda components need a product space, not {space}")
        return LambdaProduct(_decode_shape(space.base, data["product_lambda"]))
    raise ConfigError(f"Component {data!r} needs one of atom, family, product_lambda")


def encode_component(component: Component) -> dict:
    return {"w": component.weight, **_encode_shape(component.shape)}


def decode_components(space, data):
    """Components of a measure on ``space`` from a JSON list."""
    components = []
    for item in _expect(data, list, "components"):
        _expect(item, dict, "component")
        if "w" not in item:
            raise ConfigError(f"Component {item!r} has no weight 'w'")
        components.append(Component(float(item["w"]), _decode_shape(space, item)))
    return components


def encode_measure(mu: FiniteMeasure) -> dict:
    return {
        "space": encode_space(mu.space),
        "components": [encode_component(c) for c in mu.components],
    }


def decode_measure(data, space=None) -> FiniteMeasure:
    """Measure from {"space", "components"}, or from a bare component list on ``space``.

    Raises:
        ConfigError: If the JSON is malformed or the components do not fit the space
    """
    if isinstance(data, dict):
        space = decode_space(data.get("space"))
        data = data.get("components", [])
    if space is None:
        raise ConfigError("A bare component list needs a space")
    try:
        return FiniteMeasure.of(space, decode_components(space, data))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"Invalid measure: {exc}") from None


# Test sets -------------------------------------------------------------------------

def _intervals(data) -> IntervalUnion:
    try:
        return IntervalUnion.of(*(tuple(pair) for pair in _expect(data, list, "intervals")))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Invalid intervals {data!r}: {exc}") from None


def encode_test_set(test_set):
    if isinstance(test_set, FullSpace):
        return "full"
    if isinstance(test_set, ColourSet):
        return {"colours": sorted((encode_colour(c) for c in test_set.colours), key=repr)}
    if isinstance(test_set, IntervalUnion):
        return {"intervals": [list(pair) for pair in test_set.intervals]}
    if isinstance(test_set, ProductSet):
        return {
            "product": encode_test_set(test_set.base),
            "interval": [list(pair) for pair in test_set.interval.intervals],
        }
    raise TypeError(f"Unknown test set: {test_set!r}")


def decode_test_set(space, data):
    """Test set of ``space`` from its JSON form.

    Raises:
        ConfigError: If the encoding is unknown
    """
    if data == "full":
        return FullSpace()
    _expect(data, dict, "test_set")
    if "colours" in data:
        return ColourSet(frozenset(decode_colour(space, c) for c in _expect(data["colours"], list, "colours")))
    if "intervals" in data:
        return _intervals(data["intervals"])
    if "product" in data:
        if not isinstance(space, Product):
            raise ConfigError(f"Product test sets need a product space, not {space}")
        base = decode_test_set(space.base, data["product"])
        return ProductSet(base, _intervals(data.get("interval", [[0.0, 1.0]])))
    raise ConfigError(f"Unknown test set encoding: {data!r}")
