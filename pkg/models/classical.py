"""Urns with deterministic replacements."""

import math

from measures.errors import InvalidParams
from measures.measure import FiniteMeasure
from measures.spaces import Finite, Index, UnitInterval
from kernels.builtin import matrix_kernel, polya_kernel
from simulation.process import UrnSpec


def initial_weights(w, positive: bool = True):
    """Validate an initial weight vector over colours 0..d-1.

    Raises:
        InvalidParams: If fewer than two weights are given or one is out of range
    """
    w = [float(x) for x in w]
    if len(w) < 2:
        raise InvalidParams(f"Need at least two initial weights, got {len(w)}")
    for i, x in enumerate(w):
        if not math.isfinite(x) or x < 0 or (positive and x == 0):
            kind = "positive" if positive else "nonnegative"
            raise InvalidParams(f"Initial weight w[{i}] must be {kind}, got {x}")
    if sum(w) <= 0:
        raise InvalidParams("Initial weights must have positive total")
    return w


def atomic_start(space: Finite, w) -> FiniteMeasure:
    """X_0 = sum_i w_i delta_i."""
    return FiniteMeasure.atomic(space, {Index(i): x for i, x in enumerate(w)})


def eggenberger_polya(a: float = 1.0, w=(1, 1)) -> UrnSpec:
    """Classical Polya urn: the drawn ball goes back with a more of its colour.

    Formula: R_s = a * delta_s,  X_0 = sum_i w_i delta_i

    Args:
        a: Number of added balls, > 0
        w: Initial weights, at least two positive entries

    Returns:
        Balanced urn on Finite(len(w)) with declared balance a
    """
    if not a > 0:
        raise InvalidParams(f"a must be positive, got {a}")
    w = initial_weights(w)
    space = Finite(len(w))
    return UrnSpec(space, polya_kernel(space, a), atomic_start(space, w), name="eggenberger_polya")


def replacement_matrix_urn(matrix, w) -> UrnSpec:
    """Urn with a fixed nonnegative replacement matrix.

    Drawing colour i adds matrix[i][j] balls of every colour j. The urn is
    balanced when all row sums agree.
    """
    w = initial_weights(w, positive=False)
    space = Finite(len(w))
    return UrnSpec(space, matrix_kernel(space, matrix), atomic_start(space, w), name="replacement_matrix")


def blackwell_macqueen(theta: float = 1.0) -> UrnSpec:
    """Blackwell-MacQueen urn on [0,1].

    Starts from theta times Lebesgue measure; every drawn colour gets one more
    ball of its own colour, so the state is theta * lambda plus atoms at the
    colours drawn so far.

    Formula: R_s = delta_s,  X_0 = theta * lambda

    Args:
        theta: Concentration (initial mass), > 0
    """
    if not theta > 0:
        raise InvalidParams(f"theta must be positive, got {theta}")
    space = UnitInterval()
    x0 = FiniteMeasure.continuous(space, theta, "uniform", (0.0, 1.0))
    return UrnSpec(space, polya_kernel(space, 1.0), x0, name="blackwell_macqueen")
