"""Build a toy graph and corpus in memory, then cluster one query.

Run from the repository root:

    python3 demos/quickstart.py
"""

from walkcluster import (
    WalkConfig,
    build_index,
    cluster,
    generate_graph,
    induce_subgraph,
    make_corpus,
    match_query,
    report,
)


def main():
    g = generate_graph(1500, 2.5, seed=42)
    docs = make_corpus(g, seed=42, head_terms=30, tail_vocab=500)
    idx = build_index(docs)

    term, df = idx.top_terms(1)[0]
    print(f"graph: {g.node_count} nodes, {g.edge_count} edges")
    print(f"most common term: {term!r} in {df} docs\n")

    sub = induce_subgraph(g, match_query(idx, term), query=term)
    c = cluster(sub, WalkConfig(k=0.8, t_cm=0.25, seed=7))
    r = report(sub.graph, c, query=term)

    print(
        f"coverage={r.coverage} n_links={r.n_links} incluster={r.incluster}"
        f" n_clusters={r.n_clusters} max_size={r.max_size}"
    )
    for i, members in enumerate(sorted(c.clusters, key=len, reverse=True)[:5]):
        ids = sorted(int(sub.to_global[m]) for m in members)
        print(f"cluster {i}: size={len(ids)} docs={ids[:12]}")
    print(f"unassigned: {len(c.unassigned)}")


if __name__ == "__main__":
    main()
