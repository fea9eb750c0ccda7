"""Deterministic and random replacement kernels.

A deterministic kernel maps a drawn colour s to its replacement R_s. A random
kernel is given by a function f(s, u) of the colour and one uniform u; the
law of f(s, U) for U ~ U(0,1) is the law of the random replacement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from measures.errors import SpaceMismatch
from measures.measure import FiniteMeasure
from measures.signed import SignedAtomicMeasure

# Bits in the mantissa expansion of a uniform.
MANTISSA_BITS = 53
MAX_SPLIT = 8


@dataclass(frozen=True)
class DeterministicKernel:
    """s -> R_s.

    Attributes:
        space: Colour space the kernel draws from and adds to
        fn: Pure function colour -> FiniteMeasure or SignedAtomicMeasure
        declared_balance: Constant total replacement mass, if any
        name: Label used in logs and reports
    """
    space: object
    fn: Callable
    declared_balance: Optional[float] = None
    name: str = "deterministic"

    @property
    def is_random(self) -> bool:
        return False


@dataclass(frozen=True)
class RandomKernel:
    """(s, u) -> f(s, u), one uniform per replacement."""
    space: object
    fn: Callable
    declared_balance: Optional[float] = None
    name: str = "random"

    @property
    def is_random(self) -> bool:
        return True


def _check_result(kernel, result):
    if not isinstance(result, (FiniteMeasure, SignedAtomicMeasure)):
        raise TypeError(f"Kernel {kernel.name} returned {type(result).__name__}, expected a measure")
    if result.space != kernel.space:
        raise SpaceMismatch(f"Kernel {kernel.name} returned a measure on {result.space}, not {kernel.space}")
    return result


def eval_deterministic(kernel: DeterministicKernel, colour):
    """Replacement R_s for a drawn colour.

    Raises:
        SpaceMismatch: If the colour is not in the kernel's space
    """
    if not kernel.space.contains(colour):
        raise SpaceMismatch(f"Colour {colour} is not in {kernel.space}")
    return _check_result(kernel, kernel.fn(colour))


def eval_random(kernel: RandomKernel, colour, u: float):
    """Replacement f(s, u).

    Raises:
        SpaceMismatch: If the colour is not in the kernel's space
        ValueError: If u is outside [0,1]
    """
    if not kernel.space.contains(colour):
        raise SpaceMismatch(f"Colour {colour} is not in {kernel.space}")
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"Uniform must lie in [0,1], got {u}")
    return _check_result(kernel, kernel.fn(colour, u))


def evaluate_kernel(kernel, colour, u: float = None):
    """Dispatch to eval_random or eval_deterministic."""
    if kernel.is_random:
        return eval_random(kernel, colour, u)
    return eval_deterministic(kernel, colour)


def split_uniform(u: float, k: int):
    """Split one uniform into k by dealing out its binary digits.

    Bit i of the 53-bit expansion of u goes to output i mod k, so for k = 1
    the result is u itself. Outputs are independent uniforms when u is uniform,
    each with about 53 / k bits of resolution.

    Args:
        u: Value in [0,1]
        k: Number of outputs, 1 <= k <= 8

    Returns:
        List of k values in [0,1]

    Raises:
        ValueError: If k or u is out of range
    """
    if not isinstance(k, int) or not 1 <= k <= MAX_SPLIT:
        raise ValueError(f"k must be between 1 and {MAX_SPLIT}, got {k!r}")
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"Uniform must lie in [0,1], got {u}")
    bits = min(int(u * (1 << MANTISSA_BITS)), (1 << MANTISSA_BITS) - 1)
    values = [0] * k
    lengths = [0] * k
    for i in range(MANTISSA_BITS):
        bit = (bits >> (MANTISSA_BITS - 1 - i)) & 1
        j = i % k
        values[j] = (values[j] << 1) | bit
        lengths[j] += 1
    return [v / (1 << n) for v, n in zip(values, lengths)]


def replacement_mass(replacement) -> float:
    """Signed total mass of a replacement."""
    return replacement.total


def verify_balance(kernel, colours, uniforms=None, tol: float = 1e-12):
    """Check a declared balance on sample inputs.

    Args:
        kernel: Kernel with ``declared_balance`` set
        colours: Colours to evaluate at
        uniforms: Uniforms paired with the colours (random kernels only)
        tol: Absolute tolerance, scaled by max(1, |a|)

    Returns:
        The first (colour, mass) whose mass is off balance, or None
    """
    a = kernel.declared_balance
    if a is None:
        return None
    if uniforms is None:
        uniforms = [0.5] * len(colours)
    for colour, u in zip(colours, uniforms):
        mass = replacement_mass(evaluate_kernel(kernel, colour, u))
        if abs(mass - a) > tol * max(1.0, abs(a)):
            return colour, mass
    return None
