"""Directed link graphs in a canonical compressed sparse row layout.

A graph is stored as three numpy arrays: ``indptr`` (row offsets), a flat
``adjacency`` of successor ids sorted within each row, and the per-node
``in_degrees``.  Self-loops and duplicate edges are dropped on construction,
so two graphs with the same edge set compare equal regardless of the order
the edges arrived in.  Instances are immutable; the backing arrays are marked
read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

_MODES = ("in", "out", "total")


class EdgeFormatError(ValueError):
    """A line of an edge-list file could not be parsed."""


@dataclass(frozen=True, eq=False)
class LinkGraph:
    """An immutable directed graph over nodes ``0 .. node_count-1``."""

    node_count: int
    edge_count: int
    indptr: np.ndarray
    adjacency: np.ndarray
    in_degrees: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.indptr, self.adjacency, self.in_degrees):
            arr.setflags(write=False)

    def out_degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def out_neighbors(self, v: int) -> np.ndarray:
        """Successors of ``v``, ascending.  A read-only view, not a copy."""
        return self.adjacency[self.indptr[v] : self.indptr[v + 1]]

    def has_edge(self, src: int, dst: int) -> bool:
        row = self.out_neighbors(src)
        i = int(np.searchsorted(row, dst))
        return i < row.size and int(row[i]) == dst

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield (src, dst) pairs in canonical (row-major) order."""
        for v in range(self.node_count):
            for w in self.out_neighbors(v):
                yield v, int(w)

    def validate(self) -> None:
        """Raise ValueError if any structural invariant is broken."""
        n = self.node_count
        if self.indptr.shape != (n + 1,) or self.indptr[0] != 0:
            raise ValueError("malformed indptr")
        if int(self.indptr[-1]) != self.edge_count != self.adjacency.size:
            raise ValueError("edge_count disagrees with adjacency")
        if np.any(np.diff(self.indptr) < 0):
            raise ValueError("indptr not non-decreasing")
        if self.edge_count:
            if self.adjacency.min() < 0 or self.adjacency.max() >= n:
                raise ValueError("successor id out of range")
        for v in range(n):
            row = self.out_neighbors(v)
            if row.size and (np.any(np.diff(row) <= 0) or np.any(row == v)):
                raise ValueError(f"row {v} unsorted, duplicated, or self-looped")
        if not np.array_equal(
            np.bincount(self.adjacency, minlength=n), self.in_degrees
        ):
            raise ValueError("in_degrees disagree with adjacency")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinkGraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.edge_count == other.edge_count
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.adjacency, other.adjacency)
        )

    def __repr__(self) -> str:
        return f"LinkGraph(nodes={self.node_count}, edges={self.edge_count})"


@dataclass(frozen=True, eq=False)
class QueryInducedSubgraph:
    """A subgraph restricted to one query's matching nodes.

    ``graph`` is over local ids ``0 .. len(to_global)-1``; ``to_global`` maps
    each local id back to the parent graph's node id and is strictly
    increasing, so local order mirrors global order.
    """

    graph: LinkGraph
    to_global: np.ndarray
    query: str | None = field(default=None)

    def __post_init__(self) -> None:
        self.to_global.setflags(write=False)

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QueryInducedSubgraph):
            return NotImplemented
        return self.graph == other.graph and np.array_equal(
            self.to_global, other.to_global
        )

    def __repr__(self) -> str:
        return (
            f"QueryInducedSubgraph(nodes={self.node_count}, "
            f"edges={self.graph.edge_count}, query={self.query!r})"
        )


def _build(src: np.ndarray, dst: np.ndarray, node_count: int) -> tuple[LinkGraph, int]:
    total = src.size
    keep = src != dst
    src, dst = src[keep], dst[keep]
    if node_count > 0 and src.size:
        # Flat codes sort and dedupe both endpoints in one pass.
        code = np.unique(src * np.int64(node_count) + dst)
        src, dst = code // node_count, code % node_count
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=node_count), out=indptr[1:])
    in_degrees = np.bincount(dst, minlength=node_count).astype(np.int64)
    g = LinkGraph(
        node_count=node_count,
        edge_count=int(src.size),
        indptr=indptr,
        adjacency=dst.astype(np.int64),
        in_degrees=in_degrees,
    )
    return g, int(total - src.size)


def load_edges(
    edges: Iterable[tuple[int, int]], node_count: int | None = None
) -> tuple[LinkGraph, int]:
    """Build a canonical graph from (src, dst) pairs.

    Node ids must be non-negative integers.  ``node_count`` defaults to one
    more than the largest id seen; passing it explicitly allows isolated
    trailing nodes.  Returns the graph and the number of dropped edges
    (self-loops plus duplicates).
    """
    pairs = np.asarray(list(edges), dtype=np.int64)
    if pairs.size == 0:
        src = dst = np.empty(0, dtype=np.int64)
    elif pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ValueError("edges must be (src, dst) pairs")
    else:
        src, dst = pairs[:, 0].copy(), pairs[:, 1].copy()
    if src.size and min(src.min(), dst.min()) < 0:
        raise ValueError("node ids must be non-negative")
    seen = int(max(src.max(), dst.max())) + 1 if src.size else 0
    if node_count is None:
        node_count = seen
    elif node_count < seen:
        raise ValueError(f"node_count={node_count} smaller than max id {seen - 1}")
    return _build(src, dst, node_count)


def read_edge_list(path: str) -> list[tuple[int, int]]:
    """Parse a tab-separated ``src<TAB>dst`` file.

    Blank lines and lines starting with ``#`` are skipped.  Anything else
    that is not two non-negative integers raises EdgeFormatError naming the
    1-based line number.
    """
    out: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split("\t")
            if len(parts) != 2:
                raise EdgeFormatError(
                    f"line {lineno}: expected 'src<TAB>dst', got {text!r}"
                )
            try:
                s, d = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeFormatError(
                    f"line {lineno}: non-integer node id in {text!r}"
                ) from None
            if s < 0 or d < 0:
                raise EdgeFormatError(f"line {lineno}: negative node id in {text!r}")
            out.append((s, d))
    return out


def induce_subgraph(
    g: LinkGraph, nodes: Iterable[int], query: str | None = None
) -> QueryInducedSubgraph:
    """Restrict ``g`` to ``nodes`` and the edges among them.

    Duplicate ids collapse; ids outside ``0 .. node_count-1`` raise
    ValueError.  Local ids follow the sorted global order.
    """
    to_global = np.unique(np.fromiter(nodes, dtype=np.int64, count=-1))
    if to_global.size and (to_global[0] < 0 or to_global[-1] >= g.node_count):
        raise ValueError("subgraph node id out of range")
    member = np.zeros(g.node_count, dtype=bool)
    member[to_global] = True

    lens = g.indptr[to_global + 1] - g.indptr[to_global] if to_global.size else np.empty(0, np.int64)
    total = int(lens.sum())
    # Gather all successor slices of the member rows without a python loop.
    starts = np.repeat(g.indptr[to_global], lens)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(
        np.concatenate(([0], np.cumsum(lens[:-1]))) if lens.size else np.empty(0, np.int64),
        lens,
    )
    dst_global = g.adjacency[starts + offsets]
    src_local = np.repeat(np.arange(to_global.size, dtype=np.int64), lens)
    keep = member[dst_global]
    src_local = src_local[keep]
    dst_local = np.searchsorted(to_global, dst_global[keep])

    n = int(to_global.size)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src_local, minlength=n), out=indptr[1:])
    sub = LinkGraph(
        node_count=n,
        edge_count=int(src_local.size),
        indptr=indptr,
        adjacency=dst_local.astype(np.int64),
        in_degrees=np.bincount(dst_local, minlength=n).astype(np.int64),
    )
    return QueryInducedSubgraph(graph=sub, to_global=to_global, query=query)


def degree(g: LinkGraph, v: int, mode: str = "total") -> int:
    """Degree of node ``v``: incoming, outgoing, or their sum."""
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    if not 0 <= v < g.node_count:
        raise ValueError(f"node {v} out of range")
    if mode == "out":
        return g.out_degree(v)
    if mode == "in":
        return int(g.in_degrees[v])
    return g.out_degree(v) + int(g.in_degrees[v])


def degree_sequence(g: LinkGraph, mode: str = "total") -> np.ndarray:
    """Degrees of all nodes, indexed by node id."""
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    out = np.diff(g.indptr)
    if mode == "out":
        return out.astype(np.int64)
    if mode == "in":
        return g.in_degrees.copy()
    return (out + g.in_degrees).astype(np.int64)


def degree_histogram(g: LinkGraph, mode: str = "total") -> dict[int, int]:
    """Map each occurring degree value to its node count."""
    seq = degree_sequence(g, mode)
    if seq.size == 0:
        return {}
    values, counts = np.unique(seq, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def reverse_adjacency(g: LinkGraph) -> tuple[np.ndarray, np.ndarray]:
    """CSR of the reversed graph: (indptr, flat predecessor ids)."""
    src = np.repeat(np.arange(g.node_count, dtype=np.int64), np.diff(g.indptr))
    order = np.argsort(g.adjacency, kind="stable")
    indptr = np.zeros(g.node_count + 1, dtype=np.int64)
    np.cumsum(g.in_degrees, out=indptr[1:])
    return indptr, src[order]
