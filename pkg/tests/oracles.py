"""Reference models the implementation is tested against.

OracleDictionary mirrors the facade semantics with a plain dict.
OracleTrie mirrors the backend contract with adjacency maps, tracking the
correspondence between its own stable node handles and whatever ids the
backend under test currently uses (which move when bonsai tables grow).
"""

from __future__ import annotations


class OracleDictionary:
    """Ground-truth keyword map with the facade's exact semantics."""

    def __init__(self) -> None:
        self._map: dict[bytes, int] = {}

    def insert(self, key: bytes, value: int) -> bool:
        if key in self._map:
            return False
        self._map[key] = value
        return True

    def lookup(self, key: bytes):
        return self._map.get(key)

    def delete(self, key: bytes) -> bool:
        return self._map.pop(key, None) is not None

    def items(self):
        return self._map.items()

    @property
    def key_count(self) -> int:
        return len(self._map)


class OracleTrie:
    """Adjacency-map trie keyed by its own immortal node handles."""

    def __init__(self, backend) -> None:
        self.backend = backend
        self.children: dict[tuple[int, int], int] = {}
        self.parent: dict[int, tuple[int, int]] = {}
        self.n_nodes = 1
        self.root = 0
        self._next = 1
        # oracle handle -> current backend id, maintained through growths
        self.bid = {0: backend.root_id}
        self._hooked(backend)

    def _hooked(self, backend) -> None:
        previous = backend.on_grow

        def follow(remap, new_capacity):
            if remap is not None:
                self.bid = {h: remap[b] for h, b in self.bid.items()}
            if previous is not None:
                previous(remap, new_capacity)

        backend.on_grow = follow

    def addchild(self, handle: int, code: int) -> int:
        assert (handle, code) not in self.children
        new = self._next
        self._next += 1
        self.children[(handle, code)] = new
        self.parent[new] = (handle, code)
        self.n_nodes += 1
        got = self.backend.addchild(self.bid[handle], code)
        self.bid[new] = got
        return new

    def getchild(self, handle: int, code: int):
        mine = self.children.get((handle, code))
        got = self.backend.getchild(self.bid[handle], code)
        if mine is None:
            assert got is None
        else:
            assert got == self.bid[mine]
        return mine

    def check_parent(self, handle: int) -> None:
        parent, code = self.parent[handle]
        assert self.backend.getparent(self.bid[handle]) == self.bid[parent]
        assert self.backend.getedge(self.bid[handle]) == code

    def check_all(self) -> None:
        assert self.backend.node_count == self.n_nodes
        for handle in self.parent:
            self.check_parent(handle)
        ids = set(self.bid.values())
        assert len(ids) == self.n_nodes
