"""Packed fixed-width integer vectors and bit vectors over 64-bit words."""

from __future__ import annotations

import sys
from array import array

from .core import ContractViolation

_ONES = b"\xff" * 8


class IntVector:
    """Fixed-size vector of width-bit unsigned integers, bit-packed.

    Entries may straddle word boundaries. With fill_ones=True every entry
    starts at the all-ones value of its width, which the hash tables use as
    their vacancy sentinel.
    """

    __slots__ = ("width", "size", "_words", "_mask")

    def __init__(self, width: int, size: int, fill_ones: bool = False) -> None:
        if not 1 <= width <= 64:
            raise ContractViolation(f"entry width {width} outside [1, 64]")
        self.width = width
        self.size = size
        self._mask = (1 << width) - 1
        nwords = (width * size + 63) >> 6
        self._words = array("Q", (_ONES if fill_ones else b"\x00" * 8) * nwords)

    def get(self, i: int) -> int:
        bit = i * self.width
        w = bit >> 6
        off = bit & 63
        words = self._words
        v = words[w] >> off
        rem = 64 - off
        if rem < self.width:
            v |= words[w + 1] << rem
        return v & self._mask

    def set(self, i: int, v: int) -> None:
        bit = i * self.width
        w = bit >> 6
        off = bit & 63
        words = self._words
        words[w] = (words[w] & ~(self._mask << off) | (v << off)) & 0xFFFFFFFFFFFFFFFF
        spill = off + self.width - 64
        if spill > 0:
            keep = self.width - spill
            words[w + 1] = (words[w + 1] & ~((1 << spill) - 1)) | (v >> keep)

    @property
    def allocated_bytes(self) -> int:
        return sys.getsizeof(self._words)

    def __len__(self) -> int:
        return self.size


class BitVector:
    """Fixed-size bit vector with single-word chunk reads for rank queries."""

    __slots__ = ("size", "_words")

    def __init__(self, size: int) -> None:
        self.size = size
        self._words = array("Q", b"\x00" * 8 * ((size + 63) >> 6))

    def get(self, i: int) -> int:
        return (self._words[i >> 6] >> (i & 63)) & 1

    def set_true(self, i: int) -> None:
        self._words[i >> 6] |= 1 << (i & 63)

    def set(self, i: int, flag: bool) -> None:
        if flag:
            self._words[i >> 6] |= 1 << (i & 63)
        else:
            self._words[i >> 6] &= ~(1 << (i & 63)) & 0xFFFFFFFFFFFFFFFF

    def chunk(self, start: int, nbits: int) -> int:
        """Read nbits starting at start; must not straddle a word boundary."""
        return (self._words[start >> 6] >> (start & 63)) & ((1 << nbits) - 1)

    def iter_set(self):
        """Yield the indices of set bits in increasing order."""
        base = 0
        for word in self._words:
            while word:
                low = word & -word
                yield base + low.bit_length() - 1
                word ^= low
            base += 64

    @property
    def allocated_bytes(self) -> int:
        return sys.getsizeof(self._words)

    def __len__(self) -> int:
        return self.size
