"""The urn Markov chain: one step, whole runs, balance checks."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

from measures.errors import InadmissibleState, InvalidParams, SpaceMismatch, UrnError, ZeroMass
from measures.measure import FiniteMeasure, project, sample
from measures.signed import SignedAtomicMeasure
from measures.spaces import project_colour
from kernels.admissibility import apply_replacement
from kernels.kernel import evaluate_kernel, verify_balance
from simulation.rng import RandomnessStream
from simulation.statistics import Mass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UrnSpec:
    """Everything that defines an urn process.

    Attributes:
        space: Colour space
        kernel: DeterministicKernel or RandomKernel on the same space
        x0: Nonzero initial composition
        admissibility: Admissible set (callable measure -> bool) or None;
            required when the kernel can remove balls
        name: Label for logs and reports
    """
    space: object
    kernel: object
    x0: FiniteMeasure
    admissibility: object = None
    name: str = "urn"

    def __post_init__(self):
        if self.kernel.space != self.space:
            raise SpaceMismatch(f"Kernel lives on {self.kernel.space}, urn on {self.space}")
        if self.x0.space != self.space:
            raise SpaceMismatch(f"Initial state lives on {self.x0.space}, urn on {self.space}")
        if self.x0.total <= 0:
            raise ZeroMass("Initial state must have positive mass")
        if self.admissibility is not None and not self.admissibility(self.x0):
            raise InadmissibleState(f"Initial state {self.x0} is not {self.admissibility.name}")


@dataclass(frozen=True)
class UrnState:
    """X_n together with its step index.

    ``drawn`` is the colour drawn by the step that produced this state.
    """
    measure: FiniteMeasure
    step_index: int = 0
    stopped: bool = False
    drawn: object = None


def initial_state(spec: UrnSpec) -> UrnState:
    return UrnState(spec.x0)


def step(spec: UrnSpec, state: UrnState, stream: RandomnessStream) -> UrnState:
    """Draw one ball and add its replacement.

    The draw reads channel 0 of block ``state.step_index``; a random kernel
    gets channel 1 as its uniform. A deterministic kernel leaves channel 1
    to the outermost [0,1] coordinate of a drawn product colour.

    Raises:
        ZeroMass: If the urn has stopped
        NegativeMass: If a removal hits a missing ball
        InadmissibleState: If the new state leaves the admissible set
    """
    if state.stopped:
        raise ZeroMass("Cannot step a stopped urn").at_step(state.step_index + 1)
    try:
        block = stream.block(state.step_index)
        if spec.kernel.is_random:
            colour = sample(state.measure, block.draw)
            replacement = evaluate_kernel(spec.kernel, colour, block.kernel_u)
        else:
            colour = sample(state.measure, block.draw, outer_u=block.kernel_u)
            replacement = evaluate_kernel(spec.kernel, colour)
        if isinstance(replacement, SignedAtomicMeasure) and spec.admissibility is None:
            raise InadmissibleState(f"Kernel {spec.kernel.name} removed balls but the urn declares no admissible set")
        measure = apply_replacement(state.measure, replacement)
        stopped = measure.is_zero
        if not stopped and spec.admissibility is not None and not spec.admissibility(measure):
            raise InadmissibleState(f"State {measure} is not {spec.admissibility.name}")
    except UrnError as exc:
        raise exc.at_step(state.step_index + 1)
    return UrnState(measure, state.step_index + 1, stopped, colour)


@dataclass
class Trajectory:
    """A recorded run (X_0, ..., X_n).

    Attributes:
        spec: The urn that was run
        seed: Stream seed
        replicate: Stream replicate index
        labels: Names of the recorded statistics
        records: One tuple of statistic values per step, from step 0
        draws: Colours drawn, one per executed step
        final: Last state X_n
        states: Every state, when requested
        stopped_at: Step at which the urn emptied, if it did
    """
    spec: UrnSpec
    seed: int
    replicate: int
    labels: Tuple[str, ...]
    statistics: tuple = field(repr=False)
    records: List[tuple] = field(default_factory=list)
    draws: list = field(default_factory=list)
    final: Optional[FiniteMeasure] = None
    states: Optional[list] = None
    stopped_at: Optional[int] = None

    @classmethod
    def start(cls, spec, seed, replicate, statistics, keep_states, state) -> "Trajectory":
        traj = cls(spec, seed, replicate, tuple(s.label for s in statistics), tuple(statistics),
                   states=[] if keep_states else None)
        traj.append(state)
        return traj

    def append(self, state: UrnState):
        self.records.append(tuple(stat(state.measure) for stat in self.statistics))
        if state.drawn is not None:
            self.draws.append(state.drawn)
        if self.states is not None:
            self.states.append(state.measure)
        if state.stopped and self.stopped_at is None:
            self.stopped_at = state.step_index
        self.final = state.measure

    @property
    def steps(self) -> int:
        return len(self.records) - 1

    def values(self, label: str):
        """Recorded values of one statistic, indexed by step."""
        if label not in self.labels:
            raise ValueError(f"Statistic {label} was not recorded (have {', '.join(self.labels)})")
        i = self.labels.index(label)
        return [record[i] for record in self.records]

    def masses(self):
        return self.values("mass")

    def rows(self, pad_stopped: bool = True):
        """(step, label, value) in step order; stops at the stopping step unless padded."""
        last = self.steps if pad_stopped or self.stopped_at is None else self.stopped_at
        for n, record in enumerate(self.records[:last + 1]):
            for label, value in zip(self.labels, record):
                yield n, label, value

    def projected(self) -> "Trajectory":
        """The run seen through (s, u) -> s."""
        return replace(
            self,
            draws=[project_colour(c) for c in self.draws],
            final=project(self.final),
            states=None if self.states is None else [project(m) for m in self.states],
        )


def run(spec: UrnSpec, n: int, seed: int = 0, replicate: int = 0,
        record=(Mass(),), keep_states: bool = False) -> Trajectory:
    """Run n steps; a stopped urn stays at the zero measure.

    Args:
        spec: Urn to run
        n: Number of steps, n >= 0
        seed: Stream seed
        replicate: Stream replicate index
        record: Measure statistics recorded at every step
        keep_states: Keep every X_k (memory grows with n)

    Returns:
        Trajectory of n + 1 recorded steps
    """
    if n < 0:
        raise ValueError(f"Number of steps must be nonnegative, got {n}")
    stream = RandomnessStream(seed, replicate)
    state = initial_state(spec)
    traj = Trajectory.start(spec, seed, replicate, record, keep_states, state)
    for _ in range(n):
        if state.stopped:
            state = replace(state, step_index=state.step_index + 1, drawn=None)
        else:
            state = step(spec, state, stream)
            if state.stopped:
                logger.debug("%s (seed=%d, replicate=%d) stopped at step %d",
                             spec.name, seed, replicate, state.step_index)
        traj.append(state)
    return traj


def check_balanced(traj: Trajectory, a: float, b: float, tol: float = 1e-9) -> bool:
    """Whether the recorded masses follow X_n(S) = a n + b.

    Raises:
        ValueError: If the trajectory did not record masses
    """
    for n, mass in enumerate(traj.masses()):
        expected = a * n + b
        if abs(mass - expected) > tol * max(1.0, abs(expected)):
            return False
    return True


def validate_spec(spec: UrnSpec, samples: int = 1000, seed: int = 0) -> bool:
    """Check a declared balance on colours drawn from X_0.

    Raises:
        InvalidParams: If the kernel is off balance on a sampled input
    """
    stream = RandomnessStream(seed)
    blocks = [stream.block(i) for i in range(samples)]
    colours = [sample(spec.x0, b.draw, outer_u=None if spec.kernel.is_random else b.kernel_u) for b in blocks]
    off = verify_balance(spec.kernel, colours, [b.kernel_u for b in blocks])
    if off is not None:
        colour, mass = off
        raise InvalidParams(
            f"Kernel {spec.kernel.name} declares balance {spec.kernel.declared_balance} "
            f"but adds mass {mass} at colour {colour}"
        )
    return True
