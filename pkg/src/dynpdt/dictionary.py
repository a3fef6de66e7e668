"""Keyword dictionary over an incrementally path-decomposed trie.

Each stored keyword owns exactly one labeled node: the root holds the
first keyword in full, and every later keyword branches off an existing
label at its first differing byte. The branch edge carries that byte plus
its position within the parent label; positions at or past the offset
limit are reached through a chain of synthetic step nodes, each standing
for a fixed-size hop. Lookups therefore compare one label per labeled
node on the path and never rescan shared prefixes.

Deletion clears a node's value but keeps the node, so the trie only ever
grows; re-inserting a deleted keyword revives it in place.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .core import (
    NO_VALUE,
    Config,
    CorruptionError,
    InvalidKeyword,
    validate_keyword,
)
from .nlm import make_label_map
from .trie_repr import make_backend


class Dictionary:
    """Mutable map from byte keywords to 32-bit unsigned values."""

    def __init__(self, config: Config | None = None) -> None:
        self._config = config or Config()
        self._lam = self._config.offset_limit
        self._step_code = self._config.step_code
        self._backend = make_backend(self._config, self._on_grow)
        self._nlm = make_label_map(self._config, self._backend.family)
        self._live = 0

    def _on_grow(self, remap, new_capacity: int) -> None:
        if remap is None:
            self._nlm.ensure_capacity(new_capacity)
        else:
            self._nlm.remap(remap, new_capacity)

    @staticmethod
    def _mismatch_index(s: bytes, stored: bytes) -> int:
        """First index where terminated residual s differs from the label.

        The label is stored without its terminator, so when the common
        window matches, the strings diverge exactly where the shorter one
        terminates. Callers handle exact equality beforehand.
        """
        w = len(stored) if len(stored) < len(s) else len(s)
        x = int.from_bytes(s[:w], "big") ^ int.from_bytes(stored[:w], "big")
        if x:
            return w - ((x.bit_length() + 7) >> 3)
        if len(s) > w:
            return w
        raise CorruptionError("terminated strings cannot nest")

    def insert(self, keyword, value: int) -> bool:
        """Map keyword to value; False if it is already present.

        A keyword removed by delete() is revived in place and counts as
        inserted. Present keywords keep their old value.
        """
        s = validate_keyword(keyword)
        if not 0 <= value < NO_VALUE:
            raise ValueError(f"value must be in [0, {NO_VALUE})")
        backend = self._backend
        nlm = self._nlm
        u = backend.root_id
        payload = nlm.access(u)
        if payload is None:
            # very first keyword: the root takes it whole
            nlm.associate(u, s[:-1], value)
            self._live += 1
            return True
        lam = self._lam
        step = self._step_code
        while True:
            stored = payload.label
            if len(s) == len(stored) + 1 and s[:-1] == stored:
                if payload.value != NO_VALUE:
                    return False
                nlm.update_value(u, value)
                self._live += 1
                return True
            i = self._mismatch_index(s, stored)
            hops, off = divmod(i, lam)
            while hops:
                v = backend.getchild(u, step)
                if v is None:
                    v = backend.addchild(u, step)
                    nlm.associate_step(v)
                u = v
                hops -= 1
            c = s[i] * lam + off
            v = backend.getchild(u, c)
            if v is None:
                v = backend.addchild(u, c)
                rest = s[i + 1:]
                nlm.associate(v, rest[:-1], value)
                self._live += 1
                return True
            u = v
            s = s[i + 1:] or b"\x00"
            payload = nlm.access(u)
            if payload is None:
                raise CorruptionError(f"node {u} has no label record")

    def _locate(self, s: bytes):
        """Walk a terminated keyword to its node; (node, payload) or None.

        Purely structural: a located node may still hold the cleared-value
        marker left behind by delete().
        """
        backend = self._backend
        nlm = self._nlm
        u = backend.root_id
        payload = nlm.access(u)
        if payload is None:
            return None
        lam = self._lam
        step = self._step_code
        while True:
            stored = payload.label
            if len(s) == len(stored) + 1 and s[:-1] == stored:
                return u, payload
            i = self._mismatch_index(s, stored)
            hops, off = divmod(i, lam)
            while hops:
                u = backend.getchild(u, step)
                if u is None:
                    return None
                hops -= 1
            u = backend.getchild(u, s[i] * lam + off)
            if u is None:
                return None
            s = s[i + 1:] or b"\x00"
            payload = nlm.access(u)
            if payload is None:
                raise CorruptionError(f"node {u} has no label record")

    def lookup(self, keyword) -> Optional[int]:
        """Value stored for keyword, or None. Malformed keywords are absent."""
        try:
            s = validate_keyword(keyword)
        except InvalidKeyword:
            return None
        hit = self._locate(s)
        if hit is None:
            return None
        value = hit[1].value
        return None if value == NO_VALUE else value

    def delete(self, keyword) -> bool:
        """Remove keyword; False if it was not present."""
        try:
            s = validate_keyword(keyword)
        except InvalidKeyword:
            return False
        hit = self._locate(s)
        if hit is None or hit[1].value == NO_VALUE:
            return False
        self._nlm.update_value(hit[0], NO_VALUE)
        self._live -= 1
        return True

    def items(self) -> Iterator[tuple[bytes, int]]:
        """All (keyword, value) pairs, in label-storage order.

        Keywords are respelled by climbing to the root and replaying the
        path downward. Do not mutate while iterating.
        """
        nlm = self._nlm
        for nid, payload in nlm.iter_items():
            if payload.value is None or payload.value == NO_VALUE:
                continue
            yield self._spell(nid, payload.label), payload.value

    def _spell(self, nid: int, label: bytes) -> bytes:
        backend = self._backend
        nlm = self._nlm
        lam = self._lam
        step = self._step_code
        root = backend.root_id
        chain = []  # (node, incoming edge code), bottom-up
        u = nid
        while u != root:
            chain.append((u, backend.getedge(u)))
            u = backend.getparent(u)
        parts = []
        pending = 0
        cur_label = nlm.access(root).label
        for node, c in reversed(chain):
            if c == step:
                pending += lam
                continue
            char, off = divmod(c, lam)
            parts.append(cur_label[:pending + off])
            parts.append(bytes((char,)))
            pending = 0
            cur_label = nlm.access(node).label
        parts.append(label)
        raw = b"".join(parts)
        # an edge can carry the terminator itself (one keyword prefixing
        # another); everything after it is padding by construction
        if raw and raw[-1] == 0:
            raw = raw[:-1]
        return raw

    @property
    def key_count(self) -> int:
        return self._live

    def __len__(self) -> int:
        return self._live

    def __contains__(self, keyword) -> bool:
        return self.lookup(keyword) is not None

    @property
    def config(self) -> Config:
        return self._config

    @property
    def node_count(self) -> int:
        return self._backend.node_count

    @property
    def capacity(self) -> int:
        return self._backend.capacity

    @property
    def growth_events(self) -> int:
        return self._backend.growth_events

    def memory_bytes(self) -> int:
        """Bytes held by the trie table(s) and label storage."""
        return self._backend.memory_bytes() + self._nlm.memory_bytes()
