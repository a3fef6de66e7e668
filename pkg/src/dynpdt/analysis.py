"""Trie shape measurements and decomposition bounds.

The average height of the labeled (non-step) nodes is the search-time
proxy for a path-decomposed trie: it counts how many labels a lookup
compares, averaged over stored keywords. Any insertion order yields some
decomposition of the keyword set's byte trie, so the minimum and maximum
of that average over all decompositions bracket what a build can produce.
Both extremes factor per node: a decomposition picks one child branch to
continue the current path, and extending into the child with the most
(fewest) leaves minimizes (maximizes) the total, because the off-path
subtrees each pay their full leaf count in extra depth.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CorruptionError, EmptyCorpus, validate_keyword
from .dictionary import Dictionary


@dataclass(frozen=True)
class ShapeStats:
    """Node census of a built dictionary; sums are exact integers."""

    node_count: int
    step_count: int
    height_sum: int  # labeled proper ancestors, summed over labeled nodes
    label_sum: int   # terminated label lengths, summed over labeled nodes

    @property
    def nonstep_count(self) -> int:
        return self.node_count - self.step_count

    @property
    def steps_pct(self) -> float:
        """Step-node share of all nodes, as a fraction in [0, 1)."""
        return self.step_count / self.node_count

    @property
    def ave_height(self) -> float:
        return self.height_sum / self.nonstep_count

    @property
    def ave_nll(self) -> float:
        """Mean terminated label length over labeled nodes."""
        return self.label_sum / self.nonstep_count


def shape_stats(d: Dictionary) -> ShapeStats:
    """Census every node by climbing its parent chain."""
    backend = d._backend
    step_code = d._step_code
    root = backend.root_id
    node_count = 0
    step_count = 0
    height_sum = 0
    label_sum = 0
    for nid, payload in d._nlm.iter_items():
        node_count += 1
        if payload.value is None:
            step_count += 1
            continue
        label_sum += len(payload.label) + 1
        u = nid
        while u != root:
            u = backend.getparent(u)
            if u == root or backend.getedge(u) != step_code:
                height_sum += 1
    if node_count == 0:
        raise EmptyCorpus("dictionary holds no keywords")
    if node_count != backend.node_count:
        raise CorruptionError("label records out of sync with the trie")
    return ShapeStats(node_count, step_count, height_sum, label_sum)


def nonstep_path_nodes(d: Dictionary, keyword) -> int:
    """Labeled nodes on the keyword's path, its own node included.

    Every labeled edge consumes at least one byte of the terminated
    keyword (the terminator itself at most once, as the last edge), so
    the edge count is bounded by the terminated length and this node
    count by the terminated length plus one.
    """
    s = validate_keyword(keyword)
    hit = d._locate(s)
    if hit is None:
        raise KeyError(bytes(keyword))
    backend = d._backend
    root = backend.root_id
    step = d._step_code
    u = hit[0]
    n = 1
    while u != root:
        u = backend.getparent(u)
        if u == root or backend.getedge(u) != step:
            n += 1
    return n


def centroid_bound(keywords) -> float:
    """Least attainable ave_height for the keyword set.

    Realized by always continuing the current path into the child with
    the most leaves; the tie-break among equally heavy children does not
    move the total.
    """
    n, lo, _ = decomposition_bounds(keywords)
    return lo / n


def anticentroid_bound(keywords) -> float:
    """Greatest attainable ave_height: always continue into the lightest child."""
    n, _, hi = decomposition_bounds(keywords)
    return hi / n


def decomposition_bounds(keywords) -> tuple[int, int, int]:
    """(distinct keywords, min height sum, max height sum).

    The sums range over all path decompositions of the keyword set's byte
    trie; dividing by the keyword count gives the attainable band for
    ShapeStats.ave_height. Duplicates in the input are ignored.
    """
    root: dict = {}
    for raw in keywords:
        node = root
        for b in validate_keyword(raw):
            nxt = node.get(b)
            if nxt is None:
                nxt = {}
                node[b] = nxt
            node = nxt
    if not root:
        raise EmptyCorpus("no keywords given")
    return _bounds(root)


def _bounds(node: dict) -> tuple[int, int, int]:
    # iterative post-order: frame = [iterator, leaves, min_sum, max_sum,
    # heaviest child leaves, lightest child leaves]
    stack = [[iter(node.values()), 0, 0, 0, 0, -1]]
    ret = None
    while stack:
        frame = stack[-1]
        if ret is not None:
            leaves, lo, hi = ret
            frame[1] += leaves
            frame[2] += lo + leaves
            frame[3] += hi + leaves
            if leaves > frame[4]:
                frame[4] = leaves
            if frame[5] < 0 or leaves < frame[5]:
                frame[5] = leaves
            ret = None
        child = next(frame[0], None)
        if child is None:
            stack.pop()
            # continuing the path into the heaviest (lightest) child makes
            # its leaf surcharge vanish from the total
            ret = (frame[1], frame[2] - frame[4], frame[3] - frame[5])
        elif child:
            stack.append([iter(child.values()), 0, 0, 0, 0, -1])
        else:
            ret = (1, 0, 0)
    return ret
