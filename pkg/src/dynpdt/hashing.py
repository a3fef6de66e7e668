"""Hash building blocks: a 64-bit scrambler, an invertible mixer, and VByte.

Everything here is deterministic with fixed published constants: no seeds,
no per-process randomization. The scrambler is the splitmix64 output
function. The invertible mixer composes a xorshift involution with an odd
multiplicative step modulo a power of two, so compact tables can store
quotients and reconstruct keys exactly.
"""

from __future__ import annotations

from .core import ContractViolation, CorruptionError

_U64 = (1 << 64) - 1

# splitmix64 increment and output-mixing constants
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def scramble(x: int) -> int:
    """Map a 64-bit key to a well-mixed 64-bit hash (splitmix64 at index x)."""
    z = (x + GOLDEN_GAMMA) & _U64
    z = ((z ^ (z >> 30)) * _MIX1) & _U64
    z = ((z ^ (z >> 27)) * _MIX2) & _U64
    return z ^ (z >> 31)


class SplitMix64:
    """Tiny sequential PRNG over the same constants as scramble()."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _U64

    def next(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & _U64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _U64
        z = ((z ^ (z >> 27)) * _MIX2) & _U64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection sampling."""
        if bound <= 0:
            raise ContractViolation("bound must be positive")
        threshold = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next()
            if r < threshold:
                return r % bound


class BijectiveTransform:
    """Bijection over [0, 2**bits) built from two invertible stages.

    Stage one is x ^ (x >> shift) with shift > bits/2, which is its own
    inverse. Stage two multiplies by a fixed odd constant modulo 2**bits;
    its inverse multiplies by the modular inverse. forward() applies the
    xorshift first. 0 maps to 0, which parks the root key of a fresh
    compact table at slot 0.
    """

    __slots__ = ("bits", "_mask", "_shift", "_mult", "_mult_inv")

    def __init__(self, bits: int) -> None:
        if bits < 1:
            raise ContractViolation("transform needs a domain of at least one bit")
        self.bits = bits
        self._mask = (1 << bits) - 1
        self._shift = bits // 2 + 1
        self._mult = (GOLDEN_GAMMA & self._mask) | 1  # truncated constant, forced odd
        self._mult_inv = pow(self._mult, -1, 1 << bits)

    def forward(self, x: int) -> int:
        x ^= x >> self._shift
        return (x * self._mult) & self._mask

    def inverse(self, y: int) -> int:
        y = (y * self._mult_inv) & self._mask
        return y ^ (y >> self._shift)

    def rescale(self, bits: int) -> "BijectiveTransform":
        """Fresh transform over a different domain (used when tables double)."""
        return BijectiveTransform(bits)


def vbyte_encode(n: int) -> bytes:
    """Encode a non-negative integer, 7 data bits per byte, low group first.

    The high bit of each byte marks continuation. 0 encodes as a single
    0x00 byte.
    """
    if n < 0:
        raise ContractViolation("vbyte encodes non-negative integers only")
    out = bytearray()
    while n >= 0x80:
        out.append(0x80 | (n & 0x7F))
        n >>= 7
    out.append(n)
    return bytes(out)


def vbyte_decode(buf, offset: int = 0) -> tuple[int, int]:
    """Decode one integer from buf at offset. Returns (value, bytes consumed)."""
    n = 0
    shift = 0
    pos = offset
    end = len(buf)
    while True:
        if pos >= end:
            raise CorruptionError("vbyte ran past the end of the buffer")
        b = buf[pos]
        pos += 1
        n |= (b & 0x7F) << shift
        if b < 0x80:
            return n, pos - offset
        shift += 7
