"""Deterministic 64-bit splittable PRNG (splitmix64).

All seeded behaviour in the simulator flows through this module so that a
trace is a pure function of (scenario, seed). `derive` turns a base seed
plus integer stream keys (e.g. tick, obstacle index) into an independent
stream seed, which keeps replay stable no matter the call order.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential splitmix64 stream."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & MASK64
        return _mix(self._state)

    def below(self, n: int) -> int:
        # Modulo reduction; bias is negligible for the tiny n used here.
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


def derive(seed: int, *keys: int) -> int:
    """Hash (seed, *keys) into a new 64-bit stream seed."""
    s = _mix((seed + _GOLDEN) & MASK64)
    for k in keys:
        s = _mix((s + _GOLDEN + (int(k) & MASK64)) & MASK64)
    return s
