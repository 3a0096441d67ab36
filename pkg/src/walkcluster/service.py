"""Read-only HTTP API over a snapshot: /health, /search, /stats.

Parameters are parsed by hand so every rejection is a 400 with a one-line
``{"error": ...}`` body rather than a framework-shaped 422.  Handlers build
plain dicts in a fixed key order and responses are rendered with compact
separators, so identical requests yield byte-identical bodies.  The seed is
always echoed; when the client omits it the server picks one at random, and
replaying that seed through the CLI reproduces the served clustering.
"""

from __future__ import annotations

import json
import secrets

import numpy as np

from .graph import LinkGraph, degree_sequence
from .merge import cluster
from .metrics import report
from .powerlaw import InsufficientSamplesError, fit_beta
from .snapshot import Snapshot, load_snapshot
from .walks import WalkConfig

SNIPPET_CHARS = 160


class BadParameter(ValueError):
    """Client-facing validation failure; becomes a 400."""


def _parse_float(raw: str | None, name: str, default: float, lo: float, hi: float) -> float:
    if raw is None:
        return default
    try:
        value = float(raw)
    except ValueError:
        raise BadParameter(f"{name} must be a number, got {raw!r}") from None
    if not lo < value <= hi:
        raise BadParameter(f"{name} must be in ({lo:g}, {hi:g}], got {raw}")
    return value


def _parse_seed(raw: str | None) -> int:
    if raw is None:
        return secrets.randbits(63)
    try:
        seed = int(raw)
    except ValueError:
        raise BadParameter(f"seed must be an integer, got {raw!r}") from None
    if not 0 <= seed < 1 << 64:
        raise BadParameter("seed must be an unsigned 64-bit integer")
    return seed


def _parse_int(raw: str | None, name: str, default: int, lo: int) -> int:
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise BadParameter(f"{name} must be an integer, got {raw!r}") from None
    if value < lo:
        raise BadParameter(f"{name} must be >= {lo}")
    return value


def snippet(text: str) -> str:
    """Leading slice of a document used in result listings."""
    return " ".join(text[:SNIPPET_CHARS].split())


def _doc_payload(snap: Snapshot, global_id: int) -> dict:
    doc = snap.docs[global_id]
    return {"id": doc.doc_id, "url": doc.url, "snippet": snippet(doc.text)}


def handle_search(
    snap: Snapshot,
    q: str,
    k: float = 0.5,
    tcm: float = 0.25,
    seed: int | None = None,
    max_walk_factor: float = 1.0,
    limit: int = 50,
    threads: int = 1,
) -> dict:
    """Run the full pipeline for one query and shape the response dict."""
    if not q.strip():
        raise BadParameter("q must be a non-empty query")
    if limit < 0:
        raise BadParameter(f"limit must be >= 0, got {limit}")
    if seed is None:
        seed = secrets.randbits(63)
    sub = snap.query_subgraph(q)
    params = {"k": k, "tcm": tcm, "seed": seed, "max_walk_factor": max_walk_factor}

    if sub.node_count == 0:
        return {
            "query": q,
            "params": params,
            "coverage_report": {
                "coverage": 1.0,
                "n_links": 0,
                "incluster": 0,
                "n_clusters": 0,
                "max_size": 0,
            },
            "clusters": [],
            "unassigned": {"size": 0, "docs": []},
        }

    cfg = WalkConfig(k=k, max_walk_factor=max_walk_factor, t_cm=tcm, seed=seed)
    clustering = cluster(sub, cfg, threads=threads)
    rep = report(sub.graph, clustering, query=q)

    order = sorted(
        range(len(clustering.clusters)),
        key=lambda i: (-len(clustering.clusters[i]), i),
    )
    clusters_payload = []
    for out_id, i in enumerate(order):
        member_ids = sorted(int(sub.to_global[u]) for u in clustering.clusters[i])
        clusters_payload.append(
            {
                "id": out_id,
                "pivot_doc": _doc_payload(snap, int(sub.to_global[clustering.pivots[i]])),
                "size": len(member_ids),
                "docs": [_doc_payload(snap, gid) for gid in member_ids[:limit]],
            }
        )
    unassigned_ids = sorted(int(sub.to_global[u]) for u in clustering.unassigned)
    return {
        "query": q,
        "params": params,
        "coverage_report": {
            "coverage": rep.coverage,
            "n_links": rep.n_links,
            "incluster": rep.incluster,
            "n_clusters": rep.n_clusters,
            "max_size": rep.max_size,
        },
        "clusters": clusters_payload,
        "unassigned": {
            "size": len(unassigned_ids),
            "docs": [_doc_payload(snap, gid) for gid in unassigned_ids[:limit]],
        },
    }


def handle_stats(
    snap: Snapshot, q: str | None = None, mode: str = "in", x_min: int = 1
) -> dict:
    """Degree histogram and power-law fit, full graph or one query's subgraph."""
    if mode not in ("in", "out", "total"):
        raise BadParameter(f"mode must be in, out, or total, got {mode!r}")
    g: LinkGraph = snap.graph if q is None else snap.query_subgraph(q).graph
    seq = degree_sequence(g, mode)
    if seq.size:
        degrees, counts = np.unique(seq, return_counts=True)
        values = [(int(d), int(c)) for d, c in zip(degrees, counts)]
    else:
        values = []
    fit = None
    fit_error = None
    try:
        f = fit_beta(seq, x_min=x_min)
        fit = {
            "beta_hat": f.beta_hat,
            "x_min": f.x_min,
            "n_samples": f.n_samples,
            "std_error": f.std_error,
        }
    except InsufficientSamplesError as exc:
        fit_error = str(exc)
    return {
        "query": q,
        "mode": mode,
        "xmin": x_min,
        "nodes": g.node_count,
        "edges": g.edge_count,
        "median": float(np.median(seq)) if seq.size else None,
        "mean": float(seq.mean()) if seq.size else None,
        "histogram": [[d, c] for d, c in values],
        "fit": fit,
        "fit_error": fit_error,
    }


def render_body(payload: dict) -> bytes:
    """Serialise exactly the way responses go over the wire."""
    return json.dumps(
        payload, ensure_ascii=False, allow_nan=False, separators=(",", ":")
    ).encode("utf-8")


def create_app(snap: Snapshot, cors_origins: tuple[str, ...] = ("*",)):
    """Build the FastAPI app serving one immutable snapshot."""
    # Imported here so CLI commands that never serve skip the framework cost.
    from fastapi import FastAPI, Request
    from fastapi.middleware.cors import CORSMiddleware
    from fastapi.responses import JSONResponse, Response

    app = FastAPI(title="walkcluster", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(BadParameter)
    async def _bad_parameter(_, exc):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/health")
    def health():
        payload = {
            "status": "ok",
            "nodes": snap.graph.node_count,
            "edges": snap.graph.edge_count,
        }
        return Response(content=render_body(payload), media_type="application/json")

    @app.get("/search")
    def search(
        q: str | None = None,
        k: str | None = None,
        tcm: str | None = None,
        seed: str | None = None,
        max_walk_factor: str | None = None,
        limit: str | None = None,
    ):
        if q is None or not q.strip():
            raise BadParameter("q must be a non-empty query")
        payload = handle_search(
            snap,
            q=q,
            k=_parse_float(k, "k", 0.5, 0.0, 1.0),
            tcm=_parse_float(tcm, "tcm", 0.25, 0.0, 1.0),
            seed=_parse_seed(seed),
            max_walk_factor=_parse_float(max_walk_factor, "max_walk_factor", 1.0, 0.0, 1e6),
            limit=_parse_int(limit, "limit", 50, 0),
        )
        return Response(content=render_body(payload), media_type="application/json")

    @app.get("/stats")
    def stats(
        q: str | None = None, mode: str | None = None, xmin: str | None = None
    ):
        payload = handle_stats(
            snap,
            q=q,
            mode=mode if mode is not None else "in",
            x_min=_parse_int(xmin, "xmin", 1, 1),
        )
        return Response(content=render_body(payload), media_type="application/json")

    return app


def serve(
    snapshot_path: str,
    host: str = "127.0.0.1",
    port: int = 8000,
    cors_origins: tuple[str, ...] = ("*",),
) -> None:
    """Load a snapshot and serve it until interrupted."""
    import uvicorn

    snap = load_snapshot(snapshot_path)
    app = create_app(snap, cors_origins=cors_origins)
    uvicorn.run(app, host=host, port=port, log_level="info")
