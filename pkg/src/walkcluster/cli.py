"""Command-line entry point: ingest, gen, fit, cluster, sweep, serve.

Every command is deterministic once its seed is fixed, and any failure
prints a single ``error: ...`` line to stderr and exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys

import numpy as np

from .gen import make_corpus
from .graph import EdgeFormatError, degree_sequence
from .metrics import sweep_csv, sweep_k
from .powerlaw import InsufficientSamplesError, fit_beta, generate_graph
from .service import handle_search, render_body, serve
from .snapshot import SnapshotError, ingest, load_snapshot
from .textindex import write_corpus


def _add_seed(parser: argparse.ArgumentParser, default: int | None = 0) -> None:
    parser.add_argument("--seed", type=int, default=default, help="RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkcluster",
        description="Cluster query-induced link subgraphs with random walks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic graph and corpus")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--beta-out", type=float, default=2.5)
    p.add_argument("--beta-in", type=float, default=2.5)
    p.add_argument("--xmin", type=int, default=1)
    p.add_argument("--boundary-fraction", type=float, default=0.25)
    p.add_argument("--vocab-size", type=int, default=5000)
    p.add_argument("--head-terms", type=int, default=150)
    p.add_argument("--out", required=True, help="output directory")
    _add_seed(p)

    p = sub.add_parser("ingest", help="build a snapshot from edge and corpus files")
    p.add_argument("--edges", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--nodes", type=int, default=None, help="override node count")
    p.add_argument("--out", required=True, help="snapshot directory")

    p = sub.add_parser("fit", help="fit the degree distribution of a snapshot")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--q", default=None, help="restrict to a query's subgraph")
    p.add_argument("--mode", choices=("in", "out", "total"), default="in")
    p.add_argument("--xmin", type=int, default=1)
    p.add_argument("--method", choices=("mle", "approx"), default="mle")

    p = sub.add_parser("cluster", help="cluster one query's subgraph")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--k", type=float, default=0.5)
    p.add_argument("--tcm", type=float, default=0.25)
    p.add_argument("--max-walk-factor", type=float, default=1.0)
    p.add_argument("--limit", type=int, default=50)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true", help="emit the HTTP response body")
    _add_seed(p, default=None)

    p = sub.add_parser("sweep", help="coverage table over a range of k values")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--queries", required=True, help="file with one query per line")
    p.add_argument(
        "--k-list",
        default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0",
        help="comma-separated k values",
    )
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--tcm", type=float, default=0.25)
    p.add_argument("--max-walk-factor", type=float, default=1.0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    _add_seed(p)

    p = sub.add_parser("serve", help="serve a snapshot over HTTP")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument(
        "--cors-origin",
        action="append",
        default=None,
        help="allowed origin, repeatable (default *)",
    )
    return parser


def cmd_gen(args: argparse.Namespace) -> int:
    g = generate_graph(
        args.nodes,
        args.beta_out,
        x_min=args.xmin,
        seed=args.seed,
        beta_in=args.beta_in,
        boundary_fraction=args.boundary_fraction,
    )
    docs = make_corpus(
        g, seed=args.seed, head_terms=args.head_terms, tail_vocab=args.vocab_size
    )
    os.makedirs(args.out, exist_ok=True)
    edges_path = os.path.join(args.out, "edges.tsv")
    with open(edges_path, "w", encoding="utf-8") as fh:
        fh.write("# src\tdst\n")
        for s, d in g.edges():
            fh.write(f"{s}\t{d}\n")
    write_corpus(os.path.join(args.out, "corpus.jsonl"), docs)
    print(f"wrote {args.out}: nodes={g.node_count} edges={g.edge_count} docs={len(docs)}")
    return 0


def cmd_ingest(args: argparse.Namespace) -> int:
    manifest = ingest(args.edges, args.corpus, args.out, node_count=args.nodes)
    print(
        f"ingested {args.out}: nodes={manifest['nodes']} edges={manifest['edges']} "
        f"docs={manifest['docs']} dropped_edges={manifest['dropped_edges']}"
    )
    return 0


def cmd_fit(args: argparse.Namespace) -> int:
    snap = load_snapshot(args.snapshot)
    if args.q is None:
        g = snap.graph
    else:
        g = snap.query_subgraph(args.q).graph
    seq = degree_sequence(g, args.mode)
    scope = "full graph" if args.q is None else f"query {args.q!r}"
    print(f"{scope}: nodes={g.node_count} edges={g.edge_count} mode={args.mode} xmin={args.xmin}")
    try:
        fit = fit_beta(seq, x_min=args.xmin, method=args.method)
    except InsufficientSamplesError as exc:
        print(f"no samples: {exc}")
        return 0
    retained = seq[seq >= args.xmin]
    print("median mean beta_hat std_error n_samples")
    print(
        f"{float(np.median(retained)):g} {float(retained.mean()):.6g} "
        f"{fit.beta_hat:.6f} {fit.std_error:.6g} {fit.n_samples}"
    )
    return 0


def cmd_cluster(args: argparse.Namespace) -> int:
    snap = load_snapshot(args.snapshot)
    seed = args.seed if args.seed is not None else secrets.randbits(63)
    payload = handle_search(
        snap,
        q=args.q,
        k=args.k,
        tcm=args.tcm,
        seed=seed,
        max_walk_factor=args.max_walk_factor,
        limit=args.limit,
        threads=args.threads,
    )
    if args.json:
        sys.stdout.buffer.write(render_body(payload))
        sys.stdout.buffer.write(b"\n")
        return 0
    rep = payload["coverage_report"]
    print(
        f"query={payload['query']} k={args.k:g} tcm={args.tcm:g} seed={seed} "
        f"max_walk_factor={args.max_walk_factor:g}"
    )
    print(
        f"coverage={rep['coverage']:.6f} n_links={rep['n_links']} "
        f"incluster={rep['incluster']} n_clusters={rep['n_clusters']} "
        f"max_size={rep['max_size']} unassigned={payload['unassigned']['size']}"
    )
    for c in payload["clusters"]:
        print(f"cluster {c['id']}: size={c['size']} pivot_doc={c['pivot_doc']['id']} {c['pivot_doc']['url']}")
        ids = " ".join(str(d["id"]) for d in c["docs"])
        print(f"  docs: {ids}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    snap = load_snapshot(args.snapshot)
    with open(args.queries, "r", encoding="utf-8") as fh:
        queries = [line.strip() for line in fh if line.strip()]
    if not queries:
        raise ValueError(f"no queries in {args.queries}")
    k_values = [float(tok) for tok in args.k_list.split(",") if tok.strip()]
    rows = sweep_k(
        snap.graph,
        snap.index,
        queries,
        k_values,
        trials=args.trials,
        seed=args.seed,
        t_cm=args.tcm,
        max_walk_factor=args.max_walk_factor,
        threads=args.threads,
    )
    text = sweep_csv(rows)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}: {len(rows)} rows")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    origins = tuple(args.cors_origin) if args.cors_origin else ("*",)
    serve(args.snapshot, host=args.host, port=args.port, cors_origins=origins)
    return 0


_COMMANDS = {
    "gen": cmd_gen,
    "ingest": cmd_ingest,
    "fit": cmd_fit,
    "cluster": cmd_cluster,
    "sweep": cmd_sweep,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError, SnapshotError, EdgeFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
