"""Seed-reproducible xoshiro256** generator.

Weight initialization, shuffling and dataset splits all draw from this
generator so results depend only on the integer seed, not on the numpy
version.
"""

from typing import List, MutableSequence, TypeVar

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


def splitmix64(state: int):
    """One splitmix64 step; returns ``(new_state, output)``."""
    state = (state + _GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class Xoshiro256StarStar:
    """xoshiro256** seeded through splitmix64.

    Args:
        seed: Any integer; reduced modulo 2**64
        stream: Selects an independent stream for the same seed
    """

    def __init__(self, seed: int, stream: int = 0):
        state = (int(seed) ^ (int(stream) * _GOLDEN_GAMMA)) & MASK64
        words: List[int] = []
        for _ in range(4):
            state, value = splitmix64(state)
            words.append(value)
        self._s = words

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def uniform_array(self, low: float, high: float, size: int) -> np.ndarray:
        values = [self.uniform(low, high) for _ in range(size)]
        return np.array(values, dtype=np.float64)

    def randbelow(self, n: int) -> int:
        """Unbiased integer in ``[0, n)``."""
        if n < 1:
            raise ValueError(f"randbelow needs n >= 1, got {n}")
        floor = (1 << 64) % n
        while True:
            r = self.next_u64()
            if r >= floor:
                return r % n

    def shuffle(self, items: MutableSequence[T]) -> None:
        """Fisher-Yates shuffle in place."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> np.ndarray:
        order = list(range(n))
        self.shuffle(order)
        return np.array(order, dtype=np.intp)
