"""Derandomization of random-replacement urns.

A random kernel f(s, u) on S becomes the deterministic kernel
(s, u) -> f(s, u) x lambda on S x [0,1], started from X_0 x lambda. The
projection of the lifted urn has the law of the original urn; when both
chains read the same stream they agree pathwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import partial
from typing import NamedTuple

from measures.errors import AlreadyDeterministic, CouplingBroken, Incomparable, InvalidParams
from measures.measure import approx_equal, is_product_form, max_weight_error, product_with_uniform, project
from measures.signed import SignedAtomicMeasure
from measures.spaces import Pair, Product
from kernels.admissibility import lift_admissibility
from kernels.kernel import DeterministicKernel, RandomKernel, eval_random
from simulation.montecarlo import map_replicates, monte_carlo
from simulation.process import Trajectory, UrnSpec, initial_state, step
from simulation.rng import RandomnessStream
from simulation.statistics import Mass, Projected
from stats.goodness import ks_two_sample

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftedReplacement:
    """Pair(s, u) -> f(s, u) x lambda for a random kernel f."""
    kernel: RandomKernel

    def __call__(self, colour: Pair):
        replacement = eval_random(self.kernel, colour.base, colour.u)
        if isinstance(replacement, SignedAtomicMeasure):
            return replacement.lifted()
        return product_with_uniform(replacement)


def lift_spec(spec: UrnSpec) -> UrnSpec:
    """The deterministic urn on S x [0,1] equivalent to a random-kernel urn.

    Raises:
        AlreadyDeterministic: If the urn's kernel is deterministic
    """
    if not spec.kernel.is_random:
        raise AlreadyDeterministic(f"Urn {spec.name} already has a deterministic kernel")
    space = Product(spec.space)
    kernel = DeterministicKernel(
        space,
        LiftedReplacement(spec.kernel),
        declared_balance=spec.kernel.declared_balance,
        name=f"{spec.kernel.name}×λ",
    )
    return UrnSpec(
        space,
        kernel,
        product_with_uniform(spec.x0),
        admissibility=lift_admissibility(spec.admissibility),
        name=f"{spec.name}~lifted",
    )


class CoupledRun(NamedTuple):
    """Base and lifted trajectories driven by one stream."""
    base: Trajectory
    lifted: Trajectory
    max_projection_error: float


def check_couplable(spec: UrnSpec):
    """Raise unless coupled_run accepts the urn.

    Raises:
        AlreadyDeterministic: If the kernel is deterministic
        InvalidParams: If the urn has an admissible set (removals)
    """
    if not spec.kernel.is_random:
        raise AlreadyDeterministic(f"Urn {spec.name} already has a deterministic kernel")
    if spec.admissibility is not None:
        raise InvalidParams(f"Urn {spec.name} removes balls; compare it in law instead of coupling")


def _check_coupled(step_index: int, base, lifted, tol: float) -> float:
    if not is_product_form(lifted.measure):
        raise CouplingBroken(step_index, "lifted state has a component that is not a product with λ")
    projected = project(lifted.measure)
    try:
        if not approx_equal(projected, base.measure, tol):
            raise CouplingBroken(step_index, f"projection {projected} differs from {base.measure}")
        return max_weight_error(projected, base.measure)
    except Incomparable as exc:
        raise CouplingBroken(step_index, str(exc)) from exc


def coupled_run(spec: UrnSpec, n: int, seed: int = 0, replicate: int = 0,
                tol: float = 1e-9, record=(Mass(),)) -> CoupledRun:
    """Run an urn and its lift side by side on one stream.

    Both chains go through the generic ``step``. At every step the lifted
    chain must draw Pair(s, u) for the base chain's draw s and kernel
    uniform u, stay in product form, and project onto the base state.

    Args:
        spec: Urn with a random kernel that only adds balls
        n: Number of steps
        seed: Stream seed
        replicate: Stream replicate index
        tol: Relative tolerance for comparing the projection with X_n
        record: Measure statistics recorded on both chains

    Returns:
        CoupledRun(base, lifted, max_projection_error)

    Raises:
        AlreadyDeterministic: If the kernel is deterministic
        InvalidParams: If the urn has an admissible set (removals)
        CouplingBroken: If the chains disagree at some step
    """
    check_couplable(spec)
    lifted_spec = lift_spec(spec)
    stream = RandomnessStream(seed, replicate)
    base = initial_state(spec)
    lifted = initial_state(lifted_spec)
    base_traj = Trajectory.start(spec, seed, replicate, record, False, base)
    lifted_traj = Trajectory.start(lifted_spec, seed, replicate, record, False, lifted)
    worst = _check_coupled(0, base, lifted, tol)
    for k in range(n):
        u = stream.block(k).kernel_u
        base = step(spec, base, stream)
        lifted = step(lifted_spec, lifted, stream)
        if lifted.drawn != Pair(base.drawn, u):
            raise CouplingBroken(k + 1, f"lifted chain drew {lifted.drawn}, expected {Pair(base.drawn, u)}")
        worst = max(worst, _check_coupled(k + 1, base, lifted, tol))
        base_traj.append(base)
        lifted_traj.append(lifted)
    return CoupledRun(base_traj, lifted_traj, worst)


def _coupled_error(spec, n, tol, seed) -> float:
    return coupled_run(spec, n, seed, tol=tol, record=()).max_projection_error


def coupled_runs(spec: UrnSpec, n: int, seeds: int, tol: float = 1e-9,
                 first_seed: int = 0, parallelism: int = 1) -> dict:
    """coupled_run over seeds first_seed .. first_seed + seeds - 1.

    Returns:
        Report {seeds, steps, max_projection_error, pass}; pass iff the
        largest weight error is at most tol

    Raises:
        CouplingBroken: From the first seed whose chains disagree
    """
    if seeds < 1:
        raise ValueError(f"Need at least one seed, got {seeds}")
    check_couplable(spec)
    errors = map_replicates(partial(_coupled_error, spec, n, tol),
                            range(first_seed, first_seed + seeds), parallelism)
    worst = max(errors)
    logger.debug("coupled %s over %d seeds x %d steps, max projection error %g",
                 spec.name, seeds, n, worst)
    return {
        "seeds": seeds,
        "steps": n,
        "max_projection_error": worst,
        "pass": worst <= tol,
    }


def distributional_compare(spec: UrnSpec, n: int, replicates: int, statistic,
                           alpha: float = 0.01, seed: int = 0, against: UrnSpec = None,
                           parallelism: int = 1):
    """Two-sample KS comparison of a trajectory functional on two urns.

    The urn is compared against its lift unless ``against`` is given. When
    the other urn lives on S x [0,1] the functional is applied to its
    projection. The two samples use disjoint replicate ranges, so their
    streams never overlap.

    Returns:
        GoodnessResult of ks_two_sample
    """
    other = lift_spec(spec) if against is None else against
    other_statistic = statistic
    if isinstance(other.space, Product) and other.space.base == spec.space:
        other_statistic = Projected(statistic)
    left = monte_carlo(spec, n, replicates, statistic, seed, parallelism)
    right = monte_carlo(other, n, replicates, other_statistic, seed, parallelism,
                        replicate_offset=replicates)
    result = ks_two_sample(left, right, alpha)
    logger.debug("%s vs %s: D=%.5f critical=%.5f pass=%s",
                 spec.name, other.name, result.statistic, result.threshold, result.passed)
    return result
