"""Named, reproducible random streams derived from one master seed."""

import zlib

import numpy as np


class RngStreams:
    """Hands out independent numpy generators keyed by purpose.

    The same (master seed, name) pair always yields the same stream, and
    streams for different names are statistically independent.
    """

    def __init__(self, master_seed: int) -> None:
        self.master_seed = master_seed
        self._cache: dict[str, np.random.Generator] = {}

    def stream(self, name: str) -> np.random.Generator:
        if name not in self._cache:
            key = zlib.crc32(name.encode("utf-8"))
            seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(key,))
            self._cache[name] = np.random.default_rng(seq)
        return self._cache[name]
