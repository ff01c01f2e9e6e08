"""Seedable counter-mode RNG for reproducible sampling.

Draw i is a pure function of (seed, i): the seed is finalized once into a
key and each draw mixes key + i*phi through the SplitMix64 finalizer, so a
parallel worker can regenerate any slice of the stream exactly.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_PHI = 0x9E3779B97F4A7C15

ALGORITHM = "splitmix64-hi32"


def splitmix64(z: int) -> int:
    """One SplitMix64 step: advance by phi and finalize to 64 bits."""
    z = (z + _PHI) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4B9FE) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def stream_key(seed: int) -> int:
    """Decorrelate nearby seeds before counter expansion."""
    return splitmix64(seed & _MASK)


def draw32(key: int, i: int) -> int:
    """i-th uniform draw from [0, 2^32) for a finalized key."""
    return splitmix64((key + i * _PHI) & _MASK) >> 32


def uniform32_stream(seed: int, count: int) -> list[int]:
    """The first `count` 32-bit draws for a seed."""
    key = stream_key(seed)
    return [draw32(key, i) for i in range(count)]
