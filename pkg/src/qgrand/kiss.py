"""Four-seed combined generator used as the comparison baseline.

Classic Marsaglia construction: a linear congruential generator, a
13/17/5 xorshift, and two 16-bit multiply-with-carry generators, combined
as (x + y + (z << 16) + w) mod 2^32.  Words are emitted as 4 bytes each,
most significant byte first.
"""

from __future__ import annotations

import numpy as np

_M32 = (1 << 32) - 1


class Kiss:
    """Mutable generator state; four 32-bit seed words x, y, z, w."""

    def __init__(self, x: int, y: int, z: int, w: int):
        for name, value in (("x", x), ("y", y), ("z", z), ("w", w)):
            if not 0 <= value <= _M32:
                raise ValueError(f"seed {name}={value} outside 32-bit range")
        if y == 0:
            raise ValueError("seed y must be nonzero (xorshift is degenerate at 0)")
        for name, value in (("z", z), ("w", w)):
            if value in (0, _M32):
                raise ValueError(f"seed {name} must avoid 0 and 0xFFFFFFFF")
        self.x = x
        self.y = y
        self.z = z
        self.w = w

    def next_word(self) -> int:
        """Advance all four components and return the combined 32-bit output."""
        self.x = (69069 * self.x + 12345) & _M32
        y = self.y
        y ^= (y << 13) & _M32
        y ^= y >> 17
        y ^= (y << 5) & _M32
        self.y = y
        self.z = 36969 * (self.z & 0xFFFF) + (self.z >> 16)
        self.w = 18000 * (self.w & 0xFFFF) + (self.w >> 16)
        return (self.x + y + ((self.z << 16) & _M32) + self.w) & _M32

    def next_bytes(self, length: int) -> bytes:
        """Emit `length` bytes; whole words are consumed, the last may be cut."""
        if length < 0:
            raise ValueError("length must be >= 0")
        if length == 0:
            return b""
        count = -(-length // 4)
        # tight loop on locals; the recurrences are inherently sequential
        x, y, z, w = self.x, self.y, self.z, self.w
        words = np.empty(count, dtype=np.uint32)
        for i in range(count):
            x = (69069 * x + 12345) & _M32
            y ^= (y << 13) & _M32
            y ^= y >> 17
            y ^= (y << 5) & _M32
            z = 36969 * (z & 0xFFFF) + (z >> 16)
            w = 18000 * (w & 0xFFFF) + (w >> 16)
            words[i] = (x + y + ((z << 16) & _M32) + w) & _M32
        self.x, self.y, self.z, self.w = x, y, z, w
        return words.astype(">u4").tobytes()[:length]
