"""Built-in models addressable by name."""

from measures.errors import InvalidParams
from models.classical import blackwell_macqueen, eggenberger_polya, replacement_matrix_urn
from models.randomized import friedman_random, lattice_walk, random_matrix_urn
from models.removal import random_without_replacement, without_replacement_urn

MODELS = {
    "eggenberger_polya": eggenberger_polya,
    "replacement_matrix": replacement_matrix_urn,
    "blackwell_macqueen": blackwell_macqueen,
    "friedman_random": friedman_random,
    "random_matrix": random_matrix_urn,
    "lattice_walk": lattice_walk,
    "without_replacement": without_replacement_urn,
    "random_without_replacement": random_without_replacement,
}


def build_model(name: str, params: dict = None):
    """Build a named model from keyword parameters.

    Args:
        name: Model name (e.g., 'eggenberger_polya', 'friedman_random')
        params: Keyword arguments of the model constructor

    Returns:
        UrnSpec of the model

    Raises:
        InvalidParams: If the name is unknown or the parameters do not fit
    """
    key = name.lower().strip()
    if key not in MODELS:
        raise InvalidParams(f"Unknown model: {name}. Supported: {', '.join(sorted(MODELS))}")
    try:
        return MODELS[key](**(params or {}))
    except TypeError as exc:
        raise InvalidParams(f"Bad parameters for model {key}: {exc}") from None


def describe_models():
    """(name, one-line summary) for every built-in model, sorted by name."""
    return [(name, MODELS[name].__doc__.strip().splitlines()[0]) for name in sorted(MODELS)]
