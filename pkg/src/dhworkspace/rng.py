"""splitmix64: a tiny, fast, splittable 64-bit PRNG.

Chosen over numpy's generators because the state is a single uint64 and the
k-th state is seed + GOLDEN*k (mod 2^64), so any slice of the stream can be
reconstructed independently. That makes sampled workspaces reproducible
bit for bit from (seed, index) alone, with no stream object to carry around.

Reference vectors (seed 0): 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, ...
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

#: 2**-53, scales a 53-bit integer onto [0, 1)
_UNIT = 2.0 ** -53


class SplitMix64:
    """Sequential generator. state advances by GOLDEN before each output."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform double on [0, 1): the top 53 bits of the next output."""
        return (self.next_u64() >> 11) * _UNIT

    def advance(self, n: int) -> None:
        """Skip n outputs in O(1)."""
        self.state = (self.state + n * GOLDEN) & MASK64


def bulk_unit(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Outputs offset+1 .. offset+count of SplitMix64(seed).next_unit(),
    computed vectorized. Bit-identical to the scalar path.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    base = np.uint64((seed + offset * GOLDEN) & MASK64)
    with np.errstate(over="ignore"):
        k = np.arange(1, count + 1, dtype=np.uint64)
        z = base + k * np.uint64(GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
        return (z >> np.uint64(11)).astype(np.float64) * _UNIT
