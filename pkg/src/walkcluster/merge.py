"""The merge phase: consolidating raw walks into disjoint clusters.

Walks are treated as weighted node sets and repeatedly compared pairwise.
Visit counts are normalised by each walk's maximum, so a node's weight says
how central it is to that walk (its pivots have weight 1).  For a threshold
``t`` in (0, 1], two rules apply when walks share nodes:

* MERGE: if some shared node is near-pivotal in both (normalised weight at
  least ``1 - t`` on each side) and the two weights differ by less than
  ``t``, the walks describe the same neighbourhood and are folded together
  (counts summed, lengths added).
* CUT: any shared node whose weight in an already-accepted cluster exceeds
  its weight in the current walk by at least ``t`` is removed from the
  current walk; the accepted cluster keeps it.

Passes repeat until a full pass changes nothing.  Every merge or cut
strictly reduces the total number of (walk, node) memberships, so the loop
terminates.  Processing order is fixed: longer walks first, ties broken by
total visit count and then by original position, which makes the result
deterministic.  Nodes still present in several clusters afterwards go to the
cluster that visited them most (earlier cluster wins a tie).

``merge_phase`` is the production implementation; ``reference_merge``
re-derives every quantity from scratch each time it is needed and exists to
cross-check the former on small instances.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .graph import LinkGraph, QueryInducedSubgraph
from .walks import Walk, WalkConfig, walk_phase


@dataclass(eq=True)
class Clustering:
    """Disjoint node clusters plus the nodes left out.

    ``pivots[i]`` is the node of ``clusters[i]`` with the highest merged
    visit count (smallest id on ties).
    """

    clusters: list[set[int]]
    pivots: list[int]
    unassigned: set[int] = field(default_factory=set)

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    def assignment(self) -> dict[int, int]:
        """Map each clustered node to its cluster position."""
        out: dict[int, int] = {}
        for i, members in enumerate(self.clusters):
            for u in members:
                out[u] = i
        return out


class _Agg:
    """A walk being consolidated: mutable visit counts plus bookkeeping."""

    __slots__ = ("visits", "length", "index", "vmax")

    def __init__(self, visits: dict[int, int], length: int, index: int):
        self.visits = visits
        self.length = length
        self.index = index
        self.vmax = max(visits.values())

    def sort_key(self) -> tuple[int, int, int]:
        return (-self.length, -sum(self.visits.values()), self.index)


def _check_threshold(t_cm: float) -> float:
    if not 0.0 < t_cm <= 1.0:
        raise ValueError(f"t_cm must be in (0, 1], got {t_cm!r}")
    return float(t_cm)


def merge_phase(
    walks: list[Walk], t_cm: float, node_count: int | None = None
) -> Clustering:
    """Consolidate walks into a Clustering.

    With ``node_count`` given, nodes of ``0 .. node_count-1`` that no walk
    visited become the unassigned set; otherwise it is left empty.
    """
    t = _check_threshold(t_cm)
    items = [
        _Agg(dict(w.visits), w.length, i)
        for i, w in enumerate(walks)
        if w.visits
    ]

    changed = True
    while changed:
        changed = False
        items.sort(key=_Agg.sort_key)
        accepted: list[_Agg] = []
        for item in items:
            target = None
            for c in accepted:
                if _shares_pivot(item, c, t):
                    target = c
                    break
            if target is not None:
                for u, cnt in item.visits.items():
                    target.visits[u] = target.visits.get(u, 0) + cnt
                    if target.visits[u] > target.vmax:
                        target.vmax = target.visits[u]
                target.length += item.length
                target.index = min(target.index, item.index)
                changed = True
                continue
            cuts = _dominated_nodes(item, accepted, t)
            if cuts:
                for u in cuts:
                    del item.visits[u]
                changed = True
                if item.visits:
                    item.vmax = max(item.visits.values())
            if item.visits:
                accepted.append(item)
        items = accepted

    return _resolve(items, node_count)


def _shares_pivot(w: _Agg, c: _Agg, t: float) -> bool:
    # Shared node near-pivotal on both sides, with similar intensity.
    lo = 1.0 - t
    for u, cnt in w.visits.items():
        c_cnt = c.visits.get(u)
        if c_cnt is None:
            continue
        nv_w = cnt / w.vmax
        nv_c = c_cnt / c.vmax
        if nv_w >= lo and nv_c >= lo and abs(nv_w - nv_c) < t:
            return True
    return False


def _dominated_nodes(w: _Agg, accepted: list[_Agg], t: float) -> set[int]:
    # Decisions snapshot w's normalisation before any removal.
    cuts: set[int] = set()
    for u, cnt in w.visits.items():
        nv_w = cnt / w.vmax
        for c in accepted:
            c_cnt = c.visits.get(u)
            if c_cnt is not None and c_cnt / c.vmax - nv_w >= t:
                cuts.add(u)
                break
    return cuts


def _resolve(items: list[_Agg], node_count: int | None) -> Clustering:
    best: dict[int, tuple[int, int]] = {}
    for ci, agg in enumerate(items):
        for u, cnt in agg.visits.items():
            cur = best.get(u)
            if cur is None or cnt > cur[0]:
                best[u] = (cnt, ci)
    members: list[list[int]] = [[] for _ in items]
    for u, (_, ci) in best.items():
        members[ci].append(u)

    clusters: list[set[int]] = []
    pivots: list[int] = []
    for ci, agg in enumerate(items):
        if not members[ci]:
            continue
        pivot = min(members[ci], key=lambda u: (-agg.visits[u], u))
        clusters.append(set(members[ci]))
        pivots.append(pivot)

    unassigned: set[int] = set()
    if node_count is not None:
        if best and max(best) >= node_count:
            raise ValueError("walk visited a node outside 0..node_count-1")
        unassigned = set(range(node_count)) - best.keys()
    return Clustering(clusters=clusters, pivots=pivots, unassigned=unassigned)


def reference_merge(
    walks: list[Walk], t_cm: float, node_count: int | None = None
) -> Clustering:
    """Naive fixpoint twin of merge_phase for cross-checking.

    Same ordering and cut/merge rules, but every maximum, sum, and
    normalisation is recomputed from raw counts at each use, and folding
    goes through fresh Counter objects.  Quadratic and allocation-happy on
    purpose; use only on small inputs.
    """
    t = _check_threshold(t_cm)
    pool = [
        (Counter(w.visits), w.length, i) for i, w in enumerate(walks) if w.visits
    ]

    while True:
        pool.sort(key=lambda e: (-e[1], -sum(e[0].values()), e[2]))
        done: list[tuple[Counter, int, int]] = []
        dirty = False
        for visits, length, index in pool:
            merged = False
            for di, (d_visits, d_length, d_index) in enumerate(done):
                if _ref_shares_pivot(visits, d_visits, t):
                    folded = Counter(d_visits)
                    folded.update(visits)
                    done[di] = (folded, d_length + length, min(d_index, index))
                    merged = True
                    dirty = True
                    break
            if merged:
                continue
            survivors = Counter(
                {
                    u: cnt
                    for u, cnt in visits.items()
                    if not _ref_dominated(u, cnt / max(visits.values()), done, t)
                }
            )
            if len(survivors) != len(visits):
                dirty = True
            if survivors:
                done.append((survivors, length, index))
        pool = done
        if not dirty:
            break

    owner: dict[int, tuple[int, int]] = {}
    for ci, (visits, _, _) in enumerate(pool):
        for u, cnt in visits.items():
            if u not in owner or cnt > owner[u][0]:
                owner[u] = (cnt, ci)

    clusters: list[set[int]] = []
    pivots: list[int] = []
    for ci, (visits, _, _) in enumerate(pool):
        nodes = [u for u in owner if owner[u][1] == ci]
        if not nodes:
            continue
        clusters.append(set(nodes))
        pivots.append(min(nodes, key=lambda u: (-visits[u], u)))

    unassigned: set[int] = set()
    if node_count is not None:
        if owner and max(owner) >= node_count:
            raise ValueError("walk visited a node outside 0..node_count-1")
        unassigned = set(range(node_count)) - owner.keys()
    return Clustering(clusters=clusters, pivots=pivots, unassigned=unassigned)


def _ref_shares_pivot(a: Counter, b: Counter, t: float) -> bool:
    for u in a:
        if u in b:
            nv_a = a[u] / max(a.values())
            nv_b = b[u] / max(b.values())
            if nv_a >= 1.0 - t and nv_b >= 1.0 - t and abs(nv_a - nv_b) < t:
                return True
    return False


def _ref_dominated(u: int, nv_w: float, done: list, t: float) -> bool:
    for visits, _, _ in done:
        if u in visits and visits[u] / max(visits.values()) - nv_w >= t:
            return True
    return False


def cluster(
    g: LinkGraph | QueryInducedSubgraph,
    config: WalkConfig,
    threads: int = 1,
    engine: str = "auto",
) -> Clustering:
    """Full pipeline on one graph: walk phase, then merge phase.

    Accepts a plain graph or an induced subgraph (clustered over its local
    ids).  Unassigned ends up holding exactly the nodes no walk visited.
    """
    if isinstance(g, QueryInducedSubgraph):
        g = g.graph
    walks = walk_phase(g, config, threads=threads, engine=engine)
    return merge_phase(walks, config.t_cm, node_count=g.node_count)
