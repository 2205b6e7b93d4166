"""Seeded, splittable random streams.

Every Monte Carlo replica draws from its own Philox stream keyed by
``(value, stream_id)``, so results do not depend on how replicas are
scheduled across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class Seed:
    value: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("value", "stream_id"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= int(v) <= _U64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def generator(self) -> np.random.Generator:
        # Philox is counter-based: the 128-bit key fully determines the stream.
        key = int(self.value) | (int(self.stream_id) << 64)
        return np.random.Generator(np.random.Philox(key=key))

    def spawn(self, i: int) -> "Seed":
        """Child seed for replica ``i`` of a run seeded with ``self.value``."""
        return Seed(self.value, i)


def as_seed(seed) -> Seed:
    if isinstance(seed, Seed):
        return seed
    return Seed(int(seed))


def as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return as_seed(seed).generator()
