"""Random streams for the simulator.

Every chunk of runs draws from its own Philox counter-based generator,
seeded by ``SeedSequence(seed, spawn_key=(pair, orientation, chunk))``.
A chunk's draws depend only on that key, never on which worker ran it or
in what order, so totals are identical for any worker count.
"""

from __future__ import annotations

from typing import List

import numpy as np

from .models import Orientation

DEFAULT_CHUNK_SIZE = 1 << 16


def chunk_sizes(n_runs: int, chunk_size: int = DEFAULT_CHUNK_SIZE) -> List[int]:
    """Split ``n_runs`` into full chunks plus one remainder chunk."""
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {chunk_size}")
    full, rest = divmod(n_runs, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def chunk_stream(seed: int, pair_index: int, orientation: Orientation, chunk: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(pair_index, orientation.stream_index, chunk))
    return np.random.Generator(np.random.Philox(sequence))
