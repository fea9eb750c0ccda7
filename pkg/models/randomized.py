"""Urns with random replacements, driven by one kernel uniform per step."""

from measures.errors import InvalidParams
from measures.measure import FiniteMeasure
from measures.spaces import Finite, Lattice
from kernels.builtin import friedman_kernel, lattice_kernel, random_matrix_kernel
from models.classical import atomic_start, initial_weights
from simulation.process import UrnSpec


def friedman_random(p: float = 0.5, w=(1, 1)) -> UrnSpec:
    """Two-colour urn whose added ball copies the drawn colour with probability p.

    Formula: f(s, u) = delta_s if u < p else delta_{1-s}

    Args:
        p: Copy probability in [0,1]; p = 1 is the Polya urn with a = 1
        w: Initial weights of colours 0 and 1

    Returns:
        Urn on Finite(2) with declared balance 1
    """
    w = initial_weights(w)
    if len(w) != 2:
        raise InvalidParams(f"friedman_random needs two initial weights, got {len(w)}")
    space = Finite(2)
    return UrnSpec(space, friedman_kernel(space, p), atomic_start(space, w), name="friedman_random")


def random_matrix_urn(law, w) -> UrnSpec:
    """Urn with random replacement rows.

    law[i] is a list of (row, probability) pairs for drawn colour i; the row
    added is picked by the kernel uniform.
    """
    w = initial_weights(w, positive=False)
    space = Finite(len(w))
    return UrnSpec(space, random_matrix_kernel(space, law), atomic_start(space, w), name="random_matrix")


def lattice_walk(dim: int = 1, step_law=(((-1,), 0.5), ((1,), 0.5))) -> UrnSpec:
    """Translation-invariant urn on Z^dim started from one ball at the origin.

    Formula: f(s, u) = delta_{s + xi(u)},  X_0 = delta_0

    Args:
        dim: Lattice dimension, >= 1
        step_law: List of (offset, probability) pairs summing to 1
    """
    try:
        space = Lattice(int(dim))
    except ValueError as exc:
        raise InvalidParams(str(exc)) from None
    x0 = FiniteMeasure.atomic(space, {space.origin(): 1.0})
    return UrnSpec(space, lattice_kernel(space, step_law), x0, name="lattice_walk")
