"""End-to-end checks over the whole pipeline at contract tolerances.

These run on fixed-seed synthetic data, so every assertion is
reproducible bit for bit.  They are slower than the unit suites; the
timing budgets wrap only the work under test, never fixture setup.
"""

import math
import statistics
import subprocess
import sys
import time
from pathlib import Path

import pytest

from walkcluster import (
    Clustering,
    Terminated,
    WalkConfig,
    build_index,
    cluster,
    coverage,
    degree_sequence,
    fit_beta,
    generate_graph,
    induce_subgraph,
    load_snapshot,
    make_corpus,
    match_query,
    merge_phase,
    reference_merge,
    sample_power_law,
    sweep_k,
    walk_phase,
)
from walkcluster.rng import counter_below, counter_unit, stream_key
from walkcluster.service import create_app, handle_search, render_body

from test_merge import random_instance

ROOT = Path(__file__).resolve().parents[1]
DEMO = ROOT / "data" / "demo"
DEMO_QUERIES = ROOT / "data" / "demo_queries.txt"


@pytest.fixture(scope="module")
def corpus50k():
    """A 50,000-node graph with its corpus index, shared by the slow tests."""
    g = generate_graph(50_000, 2.5, seed=24)
    idx = build_index(make_corpus(g, seed=24))
    return g, idx


def test_estimator_recovers_known_exponents():
    t0 = time.perf_counter()
    worst = 0.0
    for beta in (2.1, 2.5, 2.84):
        for seed in range(10):
            samples = sample_power_law(beta, 1, 100_000, seed=seed)
            fit = fit_beta(samples, x_min=1)
            worst = max(worst, abs(fit.beta_hat - beta))
            assert abs(fit.beta_hat - beta) <= 0.03
            # The quoted error bar is exactly (beta_hat - 1) / sqrt(n).
            assert fit.std_error == (fit.beta_hat - 1) / math.sqrt(fit.n_samples)
            assert fit.n_samples == 100_000
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    print(f"PASS estimator recovery: worst error {worst:.4f} <= 0.03, {elapsed:.1f}s")


def test_term_subgraphs_keep_the_degree_exponent(corpus50k):
    g, idx = corpus50k
    t0 = time.perf_counter()
    full = fit_beta(degree_sequence(g, mode="in"), x_min=1)
    subs = []
    for term, _ in idx.top_terms(100):
        sub = induce_subgraph(g, match_query(idx, term), query=term)
        subs.append(fit_beta(degree_sequence(sub.graph, mode="in"), x_min=1).beta_hat)
    med = statistics.median(subs)
    elapsed = time.perf_counter() - t0
    assert abs(med - full.beta_hat) <= 0.2
    assert elapsed < 120.0
    print(
        f"PASS exponent stability: |{med:.3f} - {full.beta_hat:.3f}|"
        f" = {abs(med - full.beta_hat):.3f} <= 0.2, {elapsed:.0f}s"
    )


def test_coverage_rises_with_start_fraction(corpus50k):
    g, idx = corpus50k
    queries = [t for t, _ in idx.top_terms(20)]
    ks = [round(0.1 * i, 1) for i in range(1, 11)]
    t0 = time.perf_counter()
    rows = sweep_k(g, idx, queries, ks, trials=5, seed=1234, threads=4)
    elapsed = time.perf_counter() - t0
    assert len(rows) == len(queries) * len(ks) * 5

    means, errs = {}, {}
    for k in ks:
        covs = [r.coverage for r in rows if r.k == k]
        means[k] = statistics.fmean(covs)
        errs[k] = statistics.stdev(covs) / math.sqrt(len(covs))
    for lo, hi in zip(ks, ks[1:]):
        # Non-decreasing up to the sampling noise of both means.
        assert means[hi] >= means[lo] - math.hypot(errs[lo], errs[hi])
    assert means[1.0] > means[0.1]
    assert elapsed < 300.0
    print(
        f"PASS coverage trend: {means[0.1]:.3f} -> {means[1.0]:.3f}"
        f" over k=0.1..1.0, {elapsed:.0f}s"
    )


def test_merge_phase_matches_reference_on_500_instances():
    for seed in range(500):
        walks, t_cm = random_instance(seed)
        node_count = 1 + max(u for w in walks for u in w.visits)
        got = merge_phase(walks, t_cm, node_count=node_count)
        want = reference_merge(walks, t_cm, node_count=node_count)
        assert got == want, f"instance {seed}: {got} != {want}"
    print("PASS merge oracle: 500/500 instances identical")


def test_partition_invariants_hold_under_fuzz():
    key = stream_key(2026, 0)
    ctr = 0

    def draw(n):
        nonlocal ctr
        ctr += 1
        return counter_below(key, ctr, n)

    def unit():
        nonlocal ctr
        ctr += 1
        return counter_unit(key, ctr)

    splits_checked = 0
    for case in range(200):
        n = 4 + draw(197)
        g = generate_graph(n, 2.05 + 0.95 * unit(), seed=case)
        cfg = WalkConfig(
            k=round(0.05 + 0.95 * unit(), 3),
            max_walk_factor=(0.5, 1.0, 2.0)[draw(3)],
            t_cm=round(0.02 + 0.93 * unit(), 3),
            seed=1000 + case,
        )

        cap = math.ceil(cfg.max_walk_factor * n)
        assert all(w.length <= cap for w in walk_phase(g, cfg))

        c = cluster(g, cfg)
        union = set()
        total = 0
        for members in c.clusters:
            total += len(members)
            union |= members
        assert len(union) == total, "clusters overlap"
        assert not union & c.unassigned
        assert union | c.unassigned == set(range(n))
        cov = coverage(g, c)
        assert 0.0 <= cov <= 1.0

        if splits_checked < 50:
            big = [i for i, s in enumerate(c.clusters) if len(s) >= 2]
            if not big:
                continue
            i = big[draw(len(big))]
            members = sorted(c.clusters[i])
            at = 1 + draw(len(members) - 1)
            parts = [set(members[:at]), set(members[at:])]
            refined = [s for j, s in enumerate(c.clusters) if j != i] + parts
            rc = Clustering(
                clusters=refined,
                pivots=[min(s) for s in refined],
                unassigned=set(c.unassigned),
            )
            # Splitting a cluster can only lose in-cluster links.
            assert coverage(g, rc) <= cov
            splits_checked += 1
    assert splits_checked == 50
    print("PASS invariant fuzz: 200 cases, 50 refinement splits, 0 violations")


def test_identical_inputs_give_identical_bytes():
    base = [
        sys.executable, "-m", "walkcluster.cli", "cluster",
        "--snapshot", str(DEMO), "--q", "beba bebe",
        "--k", "0.6", "--tcm", "0.3", "--seed", "21",
    ]

    def run(extra=()):
        proc = subprocess.run([*base, *extra], capture_output=True)
        assert proc.returncode == 0, proc.stderr
        return proc.stdout

    assert run() == run()
    body = run(["--json"])
    assert body == run(["--json"])
    assert body == run(["--json", "--threads", "4"])

    from fastapi.testclient import TestClient

    params = {"q": "beba bebe", "k": 0.6, "tcm": 0.3, "seed": 21}
    snap = load_snapshot(str(DEMO))
    with TestClient(create_app(snap)) as client:
        first = client.get("/search", params=params)
        assert first.status_code == 200
        assert client.get("/search", params=params).content == first.content
    # A fresh snapshot load behind a fresh app serves the same bytes.
    with TestClient(create_app(load_snapshot(str(DEMO)))) as client:
        assert client.get("/search", params=params).content == first.content

    # Worker count must not leak into the payload.
    one = render_body(handle_search(snap, "beba bebe", k=0.6, tcm=0.3, seed=21, threads=1))
    many = render_body(handle_search(snap, "beba bebe", k=0.6, tcm=0.3, seed=21, threads=8))
    assert one == many
    # The CLI JSON mode prints exactly the service body plus a newline.
    assert body == first.content + b"\n"
    print("PASS determinism: CLI and HTTP bytes stable across runs and threads")


def test_stopping_walk_length_grows_sublogarithmically():
    means = {}
    for n in (10**3, 10**4, 10**5):
        g = generate_graph(n, 2.5, seed=3)
        walks = walk_phase(g, WalkConfig(k=0.5, seed=11), threads=4)
        lengths = [w.length for w in walks if w.terminated is Terminated.STOPPING_STATE]
        assert lengths
        means[n] = statistics.fmean(lengths)
    allowed = 3 * (math.log(math.log(10**5)) - math.log(math.log(10**3)))
    grown = means[10**5] - means[10**3]
    assert grown <= allowed
    assert means[10**5] <= 0.05 * 10**5
    print(f"PASS walk growth: +{grown:.3f} steps over two decades (budget {allowed:.3f})")


def test_bundled_demo_answers_ten_queries_in_budget():
    queries = DEMO_QUERIES.read_text().split()
    assert len(queries) == 10
    assert load_snapshot(str(DEMO)).graph.node_count <= 5000

    t0 = time.perf_counter()
    outputs = []
    for q in queries:
        proc = subprocess.run(
            [
                sys.executable, "-m", "walkcluster.cli", "cluster",
                "--snapshot", str(DEMO), "--q", q, "--seed", "7",
            ],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout.decode())
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0

    for out in outputs:
        summary = out.splitlines()[1]
        for field in ("coverage=", "n_links=", "incluster=", "n_clusters=", "max_size="):
            assert field in summary
    print(f"PASS demo: 10 queries in {elapsed:.2f}s with full summary rows")
