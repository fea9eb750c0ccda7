"""Continuous probability families usable as measure components.

A family turns one uniform into a point of the unit interval (inverse CDF)
and gives the exact probability of an interval union.
"""

from scipy import stats as sps

from measures.errors import InvalidParams, UnsupportedTestSet
from measures.spaces import ColourSet, FullSpace, IntervalUnion


class UniformFamily:
    """Uniform law on [low, high] inside [0,1]."""

    name = "uniform"
    param_names = ("low", "high")

    @staticmethod
    def check(params):
        low, high = params
        if not 0.0 <= low < high <= 1.0:
            raise InvalidParams(f"uniform needs 0 <= low < high <= 1, got {params}")

    @staticmethod
    def sample(params, u: float) -> float:
        low, high = params
        return low + (high - low) * u

    @staticmethod
    def cdf(params, x: float) -> float:
        low, high = params
        return min(1.0, max(0.0, (x - low) / (high - low)))


class BetaFamily:
    """Beta(a, b) law on [0,1]."""

    name = "beta"
    param_names = ("a", "b")

    @staticmethod
    def check(params):
        a, b = params
        if a <= 0 or b <= 0:
            raise InvalidParams(f"beta needs a, b > 0, got {params}")

    @staticmethod
    def sample(params, u: float) -> float:
        a, b = params
        return float(sps.beta.ppf(u, a, b))

    @staticmethod
    def cdf(params, x: float) -> float:
        a, b = params
        return float(sps.beta.cdf(x, a, b))


FAMILIES = {
    UniformFamily.name: UniformFamily,
    BetaFamily.name: BetaFamily,
}


def get_family(name: str):
    """Look up a family by name.

    Raises:
        InvalidParams: If the family is unknown
    """
    if name not in FAMILIES:
        raise InvalidParams(f"Unknown family: {name}. Supported: {', '.join(sorted(FAMILIES))}")
    return FAMILIES[name]


def family_probability(name: str, params, test_set) -> float:
    """Probability the family assigns to a test set.

    Finite colour sets have probability zero under a diffuse law.
    """
    family = get_family(name)
    if isinstance(test_set, FullSpace):
        return 1.0
    if isinstance(test_set, ColourSet):
        return 0.0
    if isinstance(test_set, IntervalUnion):
        return sum(family.cdf(params, b) - family.cdf(params, a) for a, b in test_set.merged())
    raise UnsupportedTestSet(f"Family {name} cannot evaluate {test_set!r}")
