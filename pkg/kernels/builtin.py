"""Named replacement rules.

Rules are module-level functions bound to their parameters with
functools.partial, so kernels stay picklable for the replicate pool.
"""

from bisect import bisect_right
from functools import partial

from measures.errors import InvalidParams
from measures.measure import FiniteMeasure
from measures.signed import SignedAtomicMeasure
from measures.spaces import Finite, Index, Lattice, Point
from kernels.kernel import DeterministicKernel, RandomKernel


# Helpers -------------------------------------------------------------------------

def cumulative_law(probs):
    """Cumulative probabilities of a finite law, last entry pinned to 1.

    Raises:
        InvalidParams: If a probability is negative or they do not sum to 1
    """
    total = 0.0
    out = []
    for p in probs:
        if p < 0:
            raise InvalidParams(f"Probabilities must be nonnegative, got {p}")
        total += p
        out.append(total)
    if not out or abs(total - 1.0) > 1e-9:
        raise InvalidParams(f"Probabilities must sum to 1, got {total}")
    out[-1] = 1.0
    return tuple(out)


def choose(cumulative, u: float) -> int:
    """Index i with cumulative[i-1] <= u < cumulative[i]."""
    return min(bisect_right(cumulative, u), len(cumulative) - 1)


def _row_measure(space, row):
    return FiniteMeasure.atomic(space, {Index(j): w for j, w in enumerate(row) if w != 0})


def _check_matrix(space, matrix):
    if not isinstance(space, Finite):
        raise InvalidParams(f"Replacement matrices need a finite space, got {space}")
    if len(matrix) != space.d or any(len(row) != space.d for row in matrix):
        raise InvalidParams(f"Replacement matrix must be {space.d}x{space.d}")
    for i, row in enumerate(matrix):
        for j, w in enumerate(row):
            if w < 0:
                raise InvalidParams(f"Replacement matrix entry [{i}][{j}] = {w} is negative")


def _row_law(space, law, check_row):
    """Per-colour (cumulative, rows) tables for random-row kernels."""
    if len(law) != space.d:
        raise InvalidParams(f"Need one row law per colour ({space.d}), got {len(law)}")
    tables = []
    for options in law:
        rows = tuple(tuple(float(w) for w in row) for row, _ in options)
        for row in rows:
            if len(row) != space.d:
                raise InvalidParams(f"Rows must have {space.d} entries, got {len(row)}")
            check_row(row)
        tables.append((cumulative_law([p for _, p in options]), rows))
    return tuple(tables)


def _balance_of(rows):
    sums = {sum(row) for row in rows}
    return float(sums.pop()) if len(sums) == 1 else None


# Rules ---------------------------------------------------------------------------

def polya_rule(space, a, colour):
    """a * delta_s."""
    if a == 0:
        return FiniteMeasure.empty(space)
    return FiniteMeasure.atomic(space, {colour: a})


def zero_rule(space, colour):
    return FiniteMeasure.empty(space)


def matrix_rule(space, matrix, colour):
    """Row s of the replacement matrix."""
    return _row_measure(space, matrix[colour.k])


def friedman_rule(space, p, colour, u):
    """delta_s if u < p else delta_{1-s}."""
    target = colour if u < p else Index(1 - colour.k)
    return FiniteMeasure.atomic(space, {target: 1.0})


def random_row_rule(space, tables, colour, u):
    cumulative, rows = tables[colour.k]
    return _row_measure(space, rows[choose(cumulative, u)])


def lattice_step_rule(space, cumulative, offsets, colour, u):
    """delta at s + xi, with xi picked from the step law by u."""
    offset = offsets[choose(cumulative, u)]
    target = Point(tuple(c + o for c, o in zip(colour.coords, offset)))
    return FiniteMeasure.atomic(space, {target: 1.0})


def _removal(space, row, colour):
    atoms = [(colour, -1.0)] + [(Index(j), w) for j, w in enumerate(row) if w != 0]
    return SignedAtomicMeasure.of(space, atoms)


def without_replacement_rule(space, addition, colour):
    """-delta_s plus row s of the addition matrix."""
    return _removal(space, addition[colour.k], colour)


def random_removal_rule(space, tables, colour, u):
    cumulative, rows = tables[colour.k]
    return _removal(space, rows[choose(cumulative, u)], colour)


# Kernel factories ----------------------------------------------------------------

def polya_kernel(space, a: float = 1.0) -> DeterministicKernel:
    """R_s = a * delta_s on any space."""
    if a < 0:
        raise InvalidParams(f"a must be nonnegative, got {a}")
    return DeterministicKernel(space, partial(polya_rule, space, float(a)), float(a), "polya")


def zero_kernel(space) -> DeterministicKernel:
    return DeterministicKernel(space, partial(zero_rule, space), 0.0, "zero")


def matrix_kernel(space, matrix) -> DeterministicKernel:
    """Deterministic replacement matrix with nonnegative real entries."""
    matrix = tuple(tuple(float(w) for w in row) for row in matrix)
    _check_matrix(space, matrix)
    return DeterministicKernel(space, partial(matrix_rule, space, matrix), _balance_of(matrix), "matrix")


def friedman_kernel(space, p: float) -> RandomKernel:
    """Two colours; the added ball copies the drawn colour with probability p."""
    if space != Finite(2):
        raise InvalidParams(f"friedman kernel needs Finite(2), got {space}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParams(f"p must lie in [0,1], got {p}")
    return RandomKernel(space, partial(friedman_rule, space, float(p)), 1.0, "friedman")


def random_matrix_kernel(space, law) -> RandomKernel:
    """Random replacement rows: law[i] lists (row, probability) for colour i."""
    if not isinstance(space, Finite):
        raise InvalidParams(f"random matrix kernel needs a finite space, got {space}")

    def check_row(row):
        if any(w < 0 for w in row):
            raise InvalidParams(f"Row {row} has negative entries")

    tables = _row_law(space, law, check_row)
    balance = _balance_of([row for _, rows in tables for row in rows])
    return RandomKernel(space, partial(random_row_rule, space, tables), balance, "random_matrix")


def lattice_kernel(space, step_law) -> RandomKernel:
    """Translation-invariant kernel on Z^dim: add one ball at s + xi."""
    if not isinstance(space, Lattice):
        raise InvalidParams(f"lattice kernel needs a lattice space, got {space}")
    offsets = tuple(tuple(int(c) for c in offset) for offset, _ in step_law)
    if any(len(o) != space.dim for o in offsets):
        raise InvalidParams(f"Offsets must have {space.dim} coordinates")
    cumulative = cumulative_law([p for _, p in step_law])
    return RandomKernel(space, partial(lattice_step_rule, space, cumulative, offsets), 1.0, "lattice_step")


def _check_addition_row(row):
    if any(w < 0 or w != int(w) for w in row):
        raise InvalidParams(f"Addition row {row} must hold nonnegative integers")


def without_replacement_kernel(space, addition) -> DeterministicKernel:
    """Drawn ball discarded; row s of ``addition`` is added instead."""
    addition = tuple(tuple(float(w) for w in row) for row in addition)
    _check_matrix(space, addition)
    for row in addition:
        _check_addition_row(row)
    balance = _balance_of(addition)
    return DeterministicKernel(
        space, partial(without_replacement_rule, space, addition),
        None if balance is None else balance - 1.0, "without_replacement",
    )


def random_without_replacement_kernel(space, law) -> RandomKernel:
    """Drawn ball discarded; a random addition row is chosen by u."""
    if not isinstance(space, Finite):
        raise InvalidParams(f"removal kernels need a finite space, got {space}")
    tables = _row_law(space, law, _check_addition_row)
    balance = _balance_of([row for _, rows in tables for row in rows])
    return RandomKernel(
        space, partial(random_removal_rule, space, tables),
        None if balance is None else balance - 1.0, "random_without_replacement",
    )


KERNELS = {
    "polya": polya_kernel,
    "zero": zero_kernel,
    "matrix": matrix_kernel,
    "friedman": friedman_kernel,
    "random_matrix": random_matrix_kernel,
    "lattice_step": lattice_kernel,
    "without_replacement": without_replacement_kernel,
    "random_without_replacement": random_without_replacement_kernel,
}

# Kernels that may return signed replacements.
REMOVAL_KERNELS = {"without_replacement", "random_without_replacement"}


def build_kernel(name: str, space, params: dict):
    """Build a named kernel on a space.

    Raises:
        InvalidParams: If the name or parameters are invalid
    """
    if name not in KERNELS:
        raise InvalidParams(f"Unknown kernel: {name}. Supported: {', '.join(sorted(KERNELS))}")
    try:
        return KERNELS[name](space, **params)
    except TypeError as exc:
        raise InvalidParams(f"Bad parameters for kernel {name}: {exc}") from None


