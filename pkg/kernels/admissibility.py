"""Admissible sets for urns with removals.

An urn whose kernel may remove balls declares a set of admissible states
that every step must stay in. Admissibility objects are callables
``measure -> bool`` with a ``name``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional

from measures.errors import NegativeMass
from measures.measure import Atom, add, core_shape, is_product_form, normalize, project, sample
from measures.signed import SignedAtomicMeasure, add_signed
from kernels.kernel import evaluate_kernel

INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class IntegerUrn:
    """Nonzero measures with nonnegative integer atom weights only."""
    name: str = "integer-urn"

    def __call__(self, mu) -> bool:
        return all(
            isinstance(core_shape(c.shape), Atom) and abs(c.weight - round(c.weight)) <= INTEGER_TOL
            for c in mu.components
        )


@dataclass(frozen=True)
class Predicate:
    """Custom admissible set given by a predicate on measures."""
    fn: Callable
    name: str = "custom"

    def __call__(self, mu) -> bool:
        return bool(self.fn(mu))


@dataclass(frozen=True)
class LiftedAdmissibility:
    """{mu x lambda : mu admissible} on the product space."""
    inner: object

    @property
    def name(self) -> str:
        return f"{self.inner.name}×λ"

    def __call__(self, mu) -> bool:
        return is_product_form(mu) and self.inner(project(mu))


def lift_admissibility(admissibility):
    """Admissible set of the lifted urn, or None when the urn has none."""
    return None if admissibility is None else LiftedAdmissibility(admissibility)


def apply_replacement(mu, replacement):
    """mu + R for an additive or signed replacement."""
    if isinstance(replacement, SignedAtomicMeasure):
        return add_signed(mu, replacement)
    return add(mu, replacement)


@dataclass(frozen=True)
class Violation:
    """First failing draw of an admissibility check."""
    sample: int
    colour: object
    reason: str


@dataclass
class AdmissibilityReport:
    """Outcome of check_admissibility."""
    samples: int
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None


def check_admissibility(kernel, mu, samples: int, stream, integer_urn: bool = False) -> AdmissibilityReport:
    """Spot-check R_s + mu against the admissible set for draws s ~ mu'.

    Args:
        kernel: Deterministic or random kernel
        mu: Nonzero urn state
        samples: Number of colours to draw
        stream: RandomnessStream; sample i reads block i
        integer_urn: Also require nonnegative integer atom weights

    Returns:
        AdmissibilityReport listing every failing draw in order
    """
    prob = normalize(mu)
    check = IntegerUrn() if integer_urn else None
    report = AdmissibilityReport(samples)
    for i in range(samples):
        block = stream.block(i)
        colour = sample(prob, block.draw)
        try:
            updated = apply_replacement(mu, evaluate_kernel(kernel, colour, block.kernel_u))
        except NegativeMass as exc:
            report.violations.append(Violation(i, colour, str(exc)))
            continue
        if check is not None and not check(updated):
            report.violations.append(Violation(i, colour, "atom weights are not nonnegative integers"))
    return report
