"""Errors raised by the urn library.

Every error is a ValueError so callers that only care about bad input can
catch one type; the subclasses let the CLI map failures to exit codes.
"""


class UrnError(ValueError):
    """Base class for urn errors.

    Attributes:
        step: Index of the step during which the error occurred, when known
    """

    step = None

    def at_step(self, step: int) -> "UrnError":
        """Record the step index (first writer wins) and return self."""
        if self.step is None:
            self.step = step
        return self


class SpaceMismatch(UrnError):
    """A measure, colour or kernel belongs to a different colour space."""


class ZeroMass(UrnError):
    """Operation needs a nonzero measure (the urn may have stopped)."""


class NegativeMass(UrnError):
    """A removal drove an atom below zero."""

    def __init__(self, colour, weight: float):
        super().__init__(f"Negative mass {weight!r} at colour {colour}")
        self.colour = colour
        self.weight = weight

    def __reduce__(self):
        return type(self), (self.colour, self.weight), self.__dict__


class NotProductSpace(UrnError):
    """Projection requested on a space that is not S x [0,1]."""


class UnsupportedTestSet(UrnError):
    """The test set is outside the family a component can evaluate."""


class Incomparable(UrnError):
    """Two measures have continuous parts that cannot be compared."""


class InadmissibleState(UrnError):
    """A step left the admissible set declared by the urn."""


class InvalidParams(UrnError):
    """Model or kernel parameters are invalid."""


class AlreadyDeterministic(UrnError):
    """Lifting was requested for an urn whose kernel is already deterministic."""


class CouplingBroken(UrnError):
    """The coupled base and lifted chains disagree."""

    def __init__(self, step: int, reason: str):
        super().__init__(f"Coupling broken at step {step}: {reason}")
        self.step = step
        self.reason = reason

    def __reduce__(self):
        return type(self), (self.step, self.reason), self.__dict__


class ConfigError(UrnError):
    """The run configuration failed validation."""
