"""Clustering quality: the coverage metric and parameter-sweep tables.

Coverage is the fraction of directed edges that stay inside a single
cluster.  Nodes outside every cluster count as singletons, so any edge
touching them is a cut edge; an edgeless graph has coverage 1.0 by
convention (nothing is cut).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import LinkGraph, induce_subgraph
from .merge import Clustering, cluster
from .rng import stable_seed
from .textindex import InvertedIndex, match_query
from .walks import WalkConfig

CSV_HEADER = "query,k,trial,coverage,n_clusters,max_size"


@dataclass(frozen=True)
class CoverageReport:
    coverage: float
    n_links: int
    incluster: int
    n_clusters: int
    max_size: int
    query: str | None = None


@dataclass(frozen=True)
class SweepRow:
    query: str
    k: float
    trial: int
    coverage: float
    n_clusters: int
    max_size: int


def _labels(g: LinkGraph, c: Clustering) -> np.ndarray:
    labels = np.full(g.node_count, -1, dtype=np.int64)
    for i, members in enumerate(c.clusters):
        ids = np.fromiter(members, dtype=np.int64, count=len(members))
        if ids.size and (ids.min() < 0 or ids.max() >= g.node_count):
            raise ValueError("cluster node not present in graph")
        labels[ids] = i
    if c.unassigned:
        extra = np.fromiter(c.unassigned, dtype=np.int64, count=len(c.unassigned))
        if extra.size and (extra.min() < 0 or extra.max() >= g.node_count):
            raise ValueError("unassigned node not present in graph")
    return labels


def _intra_edges(g: LinkGraph, c: Clustering) -> int:
    labels = _labels(g, c)
    if g.edge_count == 0:
        return 0
    src = np.repeat(np.arange(g.node_count, dtype=np.int64), np.diff(g.indptr))
    same = labels[src] == labels[g.adjacency]
    return int(np.count_nonzero(same & (labels[src] >= 0)))


def coverage(g: LinkGraph, c: Clustering) -> float:
    """Fraction of edges with both endpoints in the same cluster."""
    intra = _intra_edges(g, c)
    return intra / g.edge_count if g.edge_count else 1.0


def report(g: LinkGraph, c: Clustering, query: str | None = None) -> CoverageReport:
    """Coverage plus the cluster-table statistics for one clustering."""
    intra = _intra_edges(g, c)
    return CoverageReport(
        coverage=intra / g.edge_count if g.edge_count else 1.0,
        n_links=g.edge_count,
        incluster=intra,
        n_clusters=len(c.clusters),
        max_size=max((len(m) for m in c.clusters), default=0),
        query=query,
    )


def sweep_k(
    g: LinkGraph,
    index: InvertedIndex,
    queries: Sequence[str],
    k_values: Sequence[float],
    trials: int,
    seed: int,
    *,
    t_cm: float = 0.25,
    max_walk_factor: float = 1.0,
    threads: int = 1,
) -> list[SweepRow]:
    """Cluster every query's subgraph at each k, ``trials`` times.

    Each row runs with an independent sub-seed derived from
    ``(seed, query, k, trial)``, so the table is reproducible as a whole
    and any single row can be re-run in isolation.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for k in k_values:
        if not 0.0 < k <= 1.0:
            raise ValueError(f"k values must be in (0, 1], got {k!r}")
    rows: list[SweepRow] = []
    for query in queries:
        matched = match_query(index, query)
        sub = induce_subgraph(g, sorted(matched), query=query)
        for k in k_values:
            for trial in range(trials):
                cfg = WalkConfig(
                    k=float(k),
                    max_walk_factor=max_walk_factor,
                    t_cm=t_cm,
                    seed=stable_seed(seed, query, float(k), trial),
                )
                clustering = cluster(sub, cfg, threads=threads)
                rep = report(sub.graph, clustering, query=query)
                rows.append(
                    SweepRow(
                        query=query,
                        k=float(k),
                        trial=trial,
                        coverage=rep.coverage,
                        n_clusters=rep.n_clusters,
                        max_size=rep.max_size,
                    )
                )
    return rows


def sweep_csv(rows: Iterable[SweepRow]) -> str:
    """Render sweep rows as CSV (fixed header, six decimal coverage)."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.query},{r.k:g},{r.trial},{r.coverage:.6f},{r.n_clusters},{r.max_size}"
        )
    return "\n".join(lines) + "\n"
