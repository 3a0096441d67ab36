import numpy as np
import pytest

from walkcluster import (
    Clustering,
    Terminated,
    Walk,
    WalkConfig,
    cluster,
    generate_graph,
    induce_subgraph,
    merge_phase,
    reference_merge,
)
from walkcluster.rng import counter_below, counter_unit, stream_key


def walk(visits, start=None):
    """Build a Walk with a consistent length from raw visit counts."""
    if start is None:
        start = next(iter(visits))
    length = sum(visits.values()) - 1
    return Walk(
        start=start,
        visits=dict(visits),
        length=length,
        terminated=Terminated.STOPPING_STATE,
    )


def random_instance(seed, max_walks=8, max_nodes=12):
    """Random small merge input drawn from the package's own counter RNG."""
    key = stream_key(seed, 0)
    ctr = 0

    def draw(n):
        nonlocal ctr
        ctr += 1
        return counter_below(key, ctr, n)

    def unit():
        nonlocal ctr
        ctr += 1
        return counter_unit(key, ctr)

    walks = []
    for _ in range(1 + draw(max_walks)):
        size = 1 + draw(6)
        nodes = {draw(max_nodes) for _ in range(size)}
        visits = {u: 1 + draw(9) for u in nodes}
        walks.append(walk(visits))
    t_cm = round(0.05 + 0.95 * unit(), 3)
    return walks, t_cm


class TestMergePhase:
    def test_shared_pivot_merges(self):
        walks = [walk({0: 3, 1: 1}), walk({0: 3, 2: 1})]
        got = merge_phase(walks, t_cm=0.25)
        assert got.clusters == [{0, 1, 2}]
        assert got.pivots == [0]

    def test_disjoint_walks_stay_separate(self):
        walks = [walk({0: 5, 1: 1}), walk({2: 4, 3: 1})]
        for t_cm in (0.05, 0.25, 1.0):
            got = merge_phase(walks, t_cm=t_cm)
            assert sorted(map(sorted, got.clusters)) == [[0, 1], [2, 3]]

    def test_single_walk_becomes_single_cluster(self):
        got = merge_phase([walk({4: 2, 7: 1, 9: 5})], t_cm=0.25)
        assert got.clusters == [{4, 7, 9}]
        assert got.pivots == [9]

    def test_dominated_node_is_cut(self):
        # node 1 is weak in the second walk and strong in the first, and
        # there is no shared pivot, so the second walk loses it
        walks = [walk({1: 10, 2: 10}), walk({1: 1, 3: 10})]
        got = merge_phase(walks, t_cm=0.25)
        assert {1, 2} in got.clusters
        assert {3} in got.clusters

    def test_contested_node_goes_to_higher_count(self):
        # node 1 is a pivot only in the shorter walk and the count gap is
        # too small to cut, so ownership falls back to the larger raw count
        walks = [walk({1: 9, 2: 1}), walk({1: 5, 3: 8})]
        got = merge_phase(walks, t_cm=0.2)
        assert got.clusters == [{3}, {1, 2}]
        assert got.pivots == [3, 1]

    def test_unassigned_requires_node_count(self):
        walks = [walk({0: 1})]
        assert merge_phase(walks, 0.25).unassigned == set()
        assert merge_phase(walks, 0.25, node_count=3).unassigned == {1, 2}

    def test_node_beyond_node_count_rejected(self):
        with pytest.raises(ValueError):
            merge_phase([walk({5: 1})], 0.25, node_count=3)

    def test_deterministic(self):
        walks, t_cm = random_instance(123)
        assert merge_phase(walks, t_cm) == merge_phase(walks, t_cm)

    def test_input_walks_not_mutated(self):
        walks = [walk({0: 3, 1: 1}), walk({0: 3, 2: 1})]
        before = [dict(w.visits) for w in walks]
        merge_phase(walks, t_cm=0.25)
        assert [w.visits for w in walks] == before

    @pytest.mark.parametrize("t_cm", [0.0, -0.5, 1.01])
    def test_rejects_bad_threshold(self, t_cm):
        with pytest.raises(ValueError):
            merge_phase([walk({0: 1})], t_cm)


class TestReferenceMerge:
    def test_matches_on_200_random_instances(self):
        for seed in range(200):
            walks, t_cm = random_instance(seed)
            fast = merge_phase(walks, t_cm)
            slow = reference_merge(walks, t_cm)
            assert fast == slow, f"instance seed={seed} t_cm={t_cm}"

    def test_disjoint_and_single_cases(self):
        single = [walk({4: 2, 7: 1})]
        assert reference_merge(single, 0.3) == merge_phase(single, 0.3)
        disjoint = [walk({0: 5, 1: 1}), walk({2: 4, 3: 1})]
        assert reference_merge(disjoint, 0.3) == merge_phase(disjoint, 0.3)

    def test_disjoint_output_is_a_fixpoint(self):
        for seed in range(30):
            walks, t_cm = random_instance(seed)
            got = reference_merge(walks, t_cm)
            replay = [walk({u: 1 for u in c}) for c in got.clusters]
            again = reference_merge(replay, t_cm)
            assert sorted(map(sorted, again.clusters)) == sorted(
                map(sorted, got.clusters)
            )


class TestClusterPipeline:
    def test_partition_invariants(self):
        g = generate_graph(300, 2.5, seed=17)
        got = cluster(g, WalkConfig(k=0.6, seed=2))
        seen = set()
        for c in got.clusters:
            assert c, "empty cluster"
            assert not (c & seen), "overlapping clusters"
            seen |= c
        assert seen | got.unassigned == set(range(300))
        assert not (seen & got.unassigned)
        for c, p in zip(got.clusters, got.pivots):
            assert p in c

    def test_deterministic(self):
        g = generate_graph(250, 2.5, seed=3)
        cfg = WalkConfig(k=0.5, seed=10)
        assert cluster(g, cfg) == cluster(g, cfg)

    def test_accepts_induced_subgraph(self):
        g = generate_graph(100, 2.5, seed=21)
        sub = induce_subgraph(g, range(0, 100, 2), query="q")
        got = cluster(sub, WalkConfig(k=1.0, seed=5))
        covered = set().union(*got.clusters, got.unassigned)
        assert covered == set(range(50))

    def test_loose_threshold_merges_at_least_as_much(self):
        # statistical form: average cluster counts over seeds, tight vs loose
        g = generate_graph(200, 2.5, seed=30)
        tight, loose = [], []
        for seed in range(20):
            tight.append(
                cluster(g, WalkConfig(k=1.0, t_cm=0.05, seed=seed)).n_clusters
            )
            loose.append(
                cluster(g, WalkConfig(k=1.0, t_cm=0.8, seed=seed)).n_clusters
            )
        assert np.mean(tight) >= np.mean(loose)

    def test_assignment_maps_every_member(self):
        g = generate_graph(150, 2.5, seed=8)
        got = cluster(g, WalkConfig(k=0.8, seed=1))
        assignment = got.assignment()
        for i, c in enumerate(got.clusters):
            for u in c:
                assert assignment[u] == i
        for u in got.unassigned:
            assert u not in assignment
