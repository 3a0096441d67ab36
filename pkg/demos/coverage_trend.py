"""Sweep the walk-start fraction k on the demo snapshot and show how
coverage responds.  Mirrors `python3 -m walkcluster.cli sweep` but keeps
the rows in memory and prints a small table of per-k means.

Run from the repository root:

    python3 demos/coverage_trend.py
"""

import statistics
from pathlib import Path

from walkcluster import load_snapshot, sweep_k

ROOT = Path(__file__).resolve().parents[1]


def main():
    snap = load_snapshot(str(ROOT / "data" / "demo"))
    queries = [t for t, _ in snap.index.top_terms(5)]
    ks = [round(0.1 * i, 1) for i in range(1, 11)]
    rows = sweep_k(snap.graph, snap.index, queries, ks, trials=5, seed=99)

    print(f"queries: {queries}")
    print("   k  mean coverage")
    for k in ks:
        mean = statistics.fmean(r.coverage for r in rows if r.k == k)
        bar = "#" * round(40 * mean)
        print(f" {k:.1f}  {mean:.3f} {bar}")


if __name__ == "__main__":
    main()
