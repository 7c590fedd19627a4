"""Reproducible random stream over a documented bit generator.

Raw 64-bit words come from numpy's PCG64 seeded through SeedSequence; both
streams are stable across numpy releases and platforms. Everything else is
derived here with fixed float operations:

- uniform in [0, 1): ``(word >> 11) * 2**-53``
- gaussian: polar Box-Muller, the second value of each pair is cached
- permutation: Fisher-Yates, index ``floor(u * (i + 1))``
"""
import math
from typing import List, Optional

import numpy as np

_TWO_POW_MINUS_53 = 2.0 ** -53
_BUFFER_SIZE = 1024


class RandomStream:
    """Seeded source of uniforms, gaussians and permutations."""

    def __init__(self, seed: int):
        """Initialize the stream.

        Args:
            seed: Nonnegative integer seed
        """
        if seed < 0:
            raise ValueError(f"Seed must be nonnegative, got {seed}")
        self.seed = seed
        self._bits = np.random.PCG64(np.random.SeedSequence(seed))
        self._buffer: List[int] = []
        self._spare: Optional[float] = None

    def next_uint64(self) -> int:
        if not self._buffer:
            words = self._bits.random_raw(_BUFFER_SIZE).tolist()
            words.reverse()
            self._buffer = words
        return self._buffer.pop()

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_uint64() >> 11) * _TWO_POW_MINUS_53

    def uniform_range(self, low: float, high: float) -> float:
        """Uniform double in [low, high)."""
        return low + (high - low) * self.uniform()

    def gaussian(self, mean: float, std: float) -> float:
        """Normal draw using the polar Box-Muller method."""
        if self._spare is not None:
            z, self._spare = self._spare, None
            return mean + std * z
        while True:
            u = 2.0 * self.uniform() - 1.0
            v = 2.0 * self.uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                break
        factor = math.sqrt(-2.0 * math.log(s) / s)
        self._spare = v * factor
        return mean + std * (u * factor)

    def permutation(self, n: int) -> List[int]:
        """Uniformly random permutation of range(n)."""
        items = list(range(n))
        for i in range(n - 1, 0, -1):
            j = int(self.uniform() * (i + 1))
            items[i], items[j] = items[j], items[i]
        return items
