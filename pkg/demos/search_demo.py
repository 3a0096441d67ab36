"""Query the bundled demo snapshot the way the HTTP service does.

Run from the repository root:

    python3 demos/search_demo.py [query]

The same answer is available over HTTP once a server is up
(`python3 -m walkcluster.cli serve --snapshot data/demo`):

    curl 'localhost:8000/search?q=beba&k=0.6&seed=7'
"""

import sys
from pathlib import Path

from walkcluster import load_snapshot
from walkcluster.service import handle_search, handle_stats

ROOT = Path(__file__).resolve().parents[1]


def main():
    query = sys.argv[1] if len(sys.argv) > 1 else "beba"
    snap = load_snapshot(str(ROOT / "data" / "demo"))

    out = handle_search(snap, query, k=0.6, tcm=0.25, seed=7, limit=3)
    rep = out["coverage_report"]
    print(f"query={query!r} matched {rep['n_links']} links")
    print(
        f"coverage={rep['coverage']} n_clusters={rep['n_clusters']}"
        f" max_size={rep['max_size']}"
    )
    for c in out["clusters"][:3]:
        urls = [d["url"] for d in c["docs"][:3]]
        print(f"  cluster {c['id']}: size={c['size']} pivot={c['pivot_doc']['id']} {urls}")

    stats = handle_stats(snap, q=query)
    fit = stats["fit"]
    if fit is not None:
        print(f"subgraph degree exponent: {fit['beta_hat']:.2f} +- {fit['std_error']:.2f}")


if __name__ == "__main__":
    main()
