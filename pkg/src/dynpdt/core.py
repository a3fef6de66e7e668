"""Shared domain types: keywords, edge symbols, values, configuration.

Keys are arbitrary byte strings that never contain the reserved terminator
byte 0x00. The library appends the terminator internally so the stored key
set is prefix-free, which guarantees that two distinct keys always disagree
at some position strictly inside both.

Trie edges carry a (branching byte, label offset) pair packed into a single
integer code: ``code = byte * offset_limit + offset``. Offsets are kept
below ``offset_limit`` by inserting step nodes, whose edges use one reserved
marker code. Codes above the marker never occur, which leaves room for the
table sentinels used by the hash-trie backends.
"""

from __future__ import annotations

from dataclasses import dataclass

TERMINATOR = 0x00

VALUE_BITS = 32
NO_VALUE = (1 << VALUE_BITS) - 1  # reserved "absent" payload, rejected at the API boundary

MAX_CAPACITY = 1 << 48

REPRS = ("pbt", "cbt", "pfkt", "cfkt")
LABEL_MAPS = ("plm", "slm")
GROUP_SIZES = (8, 16, 32, 64)


class DynPdtError(Exception):
    """Base class for all library errors."""


class InvalidKeyword(DynPdtError):
    """Key is empty or contains the reserved terminator byte."""


class ContractViolation(DynPdtError):
    """An operation was called outside its stated preconditions."""


class CorruptionError(DynPdtError):
    """Internal state failed a consistency check that should be unreachable."""


class ResourceExhausted(DynPdtError):
    """A table cannot grow past the configured maximum capacity."""


class EmptyCorpus(DynPdtError):
    """A corpus file yielded no usable keys."""


def validate_keyword(raw) -> bytes:
    """Validate a raw key and return it with the terminator appended.

    Accepts bytes or bytearray. Rejects empty keys and keys containing the
    terminator byte, since either would break prefix-freeness.
    """
    if not isinstance(raw, (bytes, bytearray, memoryview)):
        raise InvalidKeyword(f"key must be bytes, got {type(raw).__name__}")
    raw = bytes(raw)
    if not raw:
        raise InvalidKeyword("empty key")
    if 0 in raw:
        raise InvalidKeyword("key contains the reserved terminator byte 0x00")
    return raw + b"\x00"


def encode_symbol(char: int | None, offset: int, offset_limit: int) -> int:
    """Pack a branching byte and label offset into one edge code.

    ``char=None`` encodes the step marker; its offset must be 0. Regular
    codes order lexicographically by (byte, offset) and the marker sorts
    above all of them.
    """
    if char is None:
        if offset != 0:
            raise ContractViolation("step marker carries no offset")
        return 256 * offset_limit
    if not 0 <= char <= 0xFF:
        raise ContractViolation(f"branching byte out of range: {char}")
    if not 0 <= offset < offset_limit:
        raise ContractViolation(f"offset {offset} outside [0, {offset_limit})")
    return char * offset_limit + offset


def decode_symbol(code: int, offset_limit: int) -> tuple[int | None, int]:
    """Inverse of encode_symbol. The step marker decodes to (None, 0)."""
    step = 256 * offset_limit
    if code == step:
        return None, 0
    if not 0 <= code < step:
        raise CorruptionError(f"edge code {code} outside the encodable range")
    return divmod(code, offset_limit)


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Config:
    """Construction parameters for a dictionary.

    offset_limit caps the offset component of edge codes (larger values mean
    fewer step nodes but a wider symbol space). group_size is the sparse
    label map's bucket width. max_load is fixed; tables double when an
    insert would push the fill ratio past it.
    """

    trie_repr: str = "cbt"
    label_map: str = "slm"
    offset_limit: int = 64
    group_size: int = 16
    initial_capacity: int = 1 << 16
    max_load: float = 0.9
    pbt_inplace_map: bool = False  # reuse freed table slots for the growth relocation map

    def __post_init__(self) -> None:
        if self.trie_repr not in REPRS:
            raise ContractViolation(f"trie_repr must be one of {REPRS}")
        if self.label_map not in LABEL_MAPS:
            raise ContractViolation(f"label_map must be one of {LABEL_MAPS}")
        if self.offset_limit < 4 or not _is_pow2(self.offset_limit):
            raise ContractViolation("offset_limit must be a power of two >= 4")
        if self.group_size not in GROUP_SIZES:
            raise ContractViolation(f"group_size must be one of {GROUP_SIZES}")
        if not _is_pow2(self.initial_capacity) or self.initial_capacity < 16:
            raise ContractViolation("initial_capacity must be a power of two >= 16")
        if self.initial_capacity > MAX_CAPACITY:
            raise ContractViolation("initial_capacity exceeds the supported maximum")
        if self.max_load != 0.9:
            raise ContractViolation("max_load is fixed at 0.9")

    @property
    def step_code(self) -> int:
        return 256 * self.offset_limit

    @property
    def symbol_space(self) -> int:
        # twice the marker code, a power of two, so packed (node, code) keys
        # split cleanly into bit fields
        return 512 * self.offset_limit

    @property
    def symbol_bits(self) -> int:
        return self.symbol_space.bit_length() - 1
