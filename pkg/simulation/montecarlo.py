"""Independent replicates, optionally spread over worker processes.

Replicate r always reads the stream keyed by (seed, r), and results are
collected in replicate order, so outputs do not depend on the number of
workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from simulation.process import run
from simulation.statistics import Mass

logger = logging.getLogger(__name__)


def map_replicates(fn, indices, parallelism: int):
    """fn applied to each index, in index order, on up to ``parallelism`` processes."""
    indices = list(indices)
    if parallelism <= 1 or len(indices) <= 1:
        return [fn(r) for r in indices]
    workers = min(parallelism, len(indices))
    chunksize = max(1, len(indices) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, indices, chunksize=chunksize))


def _replicate_value(spec, n, seed, statistic, replicate):
    return float(statistic(run(spec, n, seed, replicate, record=())))


def _replicate_trajectory(spec, n, seed, record, replicate):
    return run(spec, n, seed, replicate, record=record)


def monte_carlo(spec, n: int, replicates: int, statistic, seed: int = 0,
                parallelism: int = 1, replicate_offset: int = 0):
    """A trajectory functional evaluated on independent runs.

    Args:
        spec: Urn to run
        n: Steps per run
        replicates: Number of runs, >= 1
        statistic: Callable trajectory -> float
        seed: Stream seed shared by all replicates
        parallelism: Worker processes (1 runs inline)
        replicate_offset: First replicate index, for disjoint stream keys

    Returns:
        List of floats, entry r computed from run(spec, n, seed, offset + r)
    """
    if replicates < 1:
        raise ValueError(f"Need at least one replicate, got {replicates}")
    logger.debug("monte_carlo %s: n=%d replicates=%d seed=%d workers=%d",
                 spec.name, n, replicates, seed, parallelism)
    fn = partial(_replicate_value, spec, n, seed, statistic)
    return map_replicates(fn, range(replicate_offset, replicate_offset + replicates), parallelism)


def simulate_replicates(spec, n: int, replicates: int, seed: int = 0,
                        record=(Mass(),), parallelism: int = 1):
    """Recorded trajectories of replicates 0..replicates-1, in order."""
    if replicates < 1:
        raise ValueError(f"Need at least one replicate, got {replicates}")
    fn = partial(_replicate_trajectory, spec, n, seed, tuple(record))
    trajectories = map_replicates(fn, range(replicates), parallelism)
    logger.debug("simulated %d replicates of %s", len(trajectories), spec.name)
    return trajectories
