"""Drawing without replacement.

The drawn ball is discarded and a row of new balls is added, so
R_s + delta_s is a nonnegative integer vector. The state must stay an
integer urn; an urn that runs out of balls stops.
"""

from measures.errors import InvalidParams
from measures.spaces import Finite
from kernels.admissibility import IntegerUrn
from kernels.builtin import random_without_replacement_kernel, without_replacement_kernel
from models.classical import atomic_start
from simulation.process import UrnSpec


def integer_start(d: int, x0):
    """Validate ball counts for a d-colour removal urn.

    Raises:
        InvalidParams: If the counts are not nonnegative integers or do not
            match the number of colours
    """
    if not isinstance(d, int) or d < 1:
        raise InvalidParams(f"d must be a positive integer, got {d!r}")
    counts = [float(x) for x in x0]
    if len(counts) != d:
        raise InvalidParams(f"Need {d} initial counts, got {len(counts)}")
    for i, x in enumerate(counts):
        if x < 0 or x != int(x):
            raise InvalidParams(f"Initial count x0[{i}] = {x} must be a nonnegative integer")
    if sum(counts) <= 0:
        raise InvalidParams("Initial urn must hold at least one ball")
    return counts


def without_replacement_urn(d: int, addition, x0) -> UrnSpec:
    """Discard the drawn ball and add row s of an integer matrix.

    Formula: R_s = -delta_s + sum_j addition[s][j] delta_j

    Args:
        d: Number of colours
        addition: d x d matrix of nonnegative integers
        x0: Initial ball counts

    Returns:
        Urn with the integer-urn admissible set
    """
    counts = integer_start(d, x0)
    space = Finite(d)
    return UrnSpec(
        space, without_replacement_kernel(space, addition), atomic_start(space, counts),
        admissibility=IntegerUrn(), name="without_replacement",
    )


def random_without_replacement(d: int, law, x0) -> UrnSpec:
    """Discard the drawn ball and add a random integer row.

    law[s] lists (row, probability) pairs for drawn colour s.
    """
    counts = integer_start(d, x0)
    space = Finite(d)
    return UrnSpec(
        space, random_without_replacement_kernel(space, law), atomic_start(space, counts),
        admissibility=IntegerUrn(), name="random_without_replacement",
    )
