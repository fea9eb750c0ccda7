"""Counter-based randomness for reproducible replicates.

Every replicate owns a stream keyed by (seed, replicate). Step n of a run
reads block n, a row of eight uniforms: slots 0-6 drive the draw from the
urn (channel 0) and slot 7 is the kernel uniform u (channel 1). Blocks are a
pure function of (key, position), so replicates can run in any order or in
parallel and still see the same numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

BLOCK_WIDTH = 8
DRAW_SLOTS = BLOCK_WIDTH - 1
CHUNK_ROWS = 256
MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class StepBlock:
    """Uniforms consumed by one step.

    Attributes:
        draw: Channel 0, component selection then within-component sampling
        kernel_u: Channel 1, the kernel uniform (or the outermost [0,1]
            coordinate when the kernel is deterministic)
    """
    draw: Tuple[float, ...]
    kernel_u: float


class RandomnessStream:
    """Philox stream keyed by (seed, replicate)."""

    def __init__(self, seed: int, replicate: int = 0):
        self.seed = int(seed) & MASK64
        self.replicate = int(replicate) & MASK64
        self.position = 0
        self._chunk_index = None
        self._rows = None

    @property
    def key(self) -> Tuple[int, int]:
        return self.seed, self.replicate

    def _chunk(self, index: int):
        if index != self._chunk_index:
            bit_generator = np.random.Philox(
                key=np.array([self.seed, self.replicate], dtype=np.uint64),
                counter=np.array([0, 0, 0, index], dtype=np.uint64),
            )
            self._rows = np.random.Generator(bit_generator).random((CHUNK_ROWS, BLOCK_WIDTH)).tolist()
            self._chunk_index = index
        return self._rows

    def row(self, position: int):
        """The eight uniforms of block ``position``."""
        if position < 0:
            raise ValueError(f"Stream position must be nonnegative, got {position}")
        return self._chunk(position // CHUNK_ROWS)[position % CHUNK_ROWS]

    def block(self, position: int) -> StepBlock:
        """Block at a given position, split into its two channels."""
        row = self.row(position)
        return StepBlock(tuple(row[:DRAW_SLOTS]), row[DRAW_SLOTS])

    def next_block(self) -> StepBlock:
        """Block at the current position; advances the position."""
        block = self.block(self.position)
        self.position += 1
        return block

    def uniforms(self, count: int, start: int = 0):
        """``count`` uniforms read row by row from flat position ``start``."""
        out = []
        for flat in range(start, start + count):
            out.append(self.row(flat // BLOCK_WIDTH)[flat % BLOCK_WIDTH])
        return out

    def __repr__(self) -> str:
        return f"RandomnessStream(seed={self.seed}, replicate={self.replicate}, position={self.position})"
