"""Snapshot directories: immutable ingested bundles the server runs on.

A snapshot holds the raw inputs verbatim (``edges.tsv``, ``corpus.jsonl``)
plus a ``manifest`` recording counts and sha256 checksums.  Loading verifies
the checksums and counts, so a served graph is exactly what was ingested.
The manifest is JSON with sorted keys and no timestamps: re-ingesting the
same inputs yields a byte-identical directory.
"""

from __future__ import annotations

import hashlib
import json
import os
import shutil
from dataclasses import dataclass

from .graph import LinkGraph, QueryInducedSubgraph, induce_subgraph, load_edges, read_edge_list
from .textindex import Document, InvertedIndex, build_index, match_query, read_corpus

MANIFEST_NAME = "manifest"
FORMAT_VERSION = 1


class SnapshotError(RuntimeError):
    """Snapshot directory missing, corrupt, or inconsistent."""


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass(frozen=True)
class Snapshot:
    graph: LinkGraph
    index: InvertedIndex
    docs: dict[int, Document]
    manifest: dict

    def query_subgraph(self, q: str) -> QueryInducedSubgraph:
        """The subgraph induced by documents matching ``q``."""
        matched = match_query(self.index, q)
        return induce_subgraph(self.graph, sorted(matched), query=q)


def ingest(
    edges_path: str,
    corpus_path: str,
    out_dir: str,
    node_count: int | None = None,
) -> dict:
    """Validate inputs and write a snapshot directory; returns the manifest.

    Node count defaults to covering both the largest edge endpoint and the
    largest doc id.  Documents whose ids fall outside the graph are an
    error, reported with the offending ids.
    """
    edges = read_edge_list(edges_path)
    docs = read_corpus(corpus_path)

    max_edge_id = max((max(s, d) for s, d in edges), default=-1)
    max_doc_id = max((doc.doc_id for doc in docs), default=-1)
    if node_count is None:
        node_count = max(max_edge_id, max_doc_id) + 1
    graph, dropped = load_edges(edges, node_count=node_count)

    offenders = sorted(doc.doc_id for doc in docs if doc.doc_id >= node_count)
    if offenders:
        shown = ", ".join(str(i) for i in offenders[:10])
        rest = f" (+{len(offenders) - 10} more)" if len(offenders) > 10 else ""
        raise ValueError(f"doc ids outside graph (node_count={node_count}): {shown}{rest}")
    build_index(docs)  # surfaces duplicate doc ids before anything is written

    os.makedirs(out_dir, exist_ok=True)
    edges_out = os.path.join(out_dir, "edges.tsv")
    corpus_out = os.path.join(out_dir, "corpus.jsonl")
    shutil.copyfile(edges_path, edges_out)
    shutil.copyfile(corpus_path, corpus_out)

    manifest = {
        "format": FORMAT_VERSION,
        "nodes": graph.node_count,
        "edges": graph.edge_count,
        "docs": len(docs),
        "dropped_edges": dropped,
        "checksums": {
            "edges.tsv": _sha256(edges_out),
            "corpus.jsonl": _sha256(corpus_out),
        },
    }
    with open(os.path.join(out_dir, MANIFEST_NAME), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return manifest


def load_snapshot(path: str) -> Snapshot:
    """Load and fully validate a snapshot directory."""
    manifest_path = os.path.join(path, MANIFEST_NAME)
    try:
        with open(manifest_path, "r", encoding="utf-8") as fh:
            manifest = json.load(fh)
    except FileNotFoundError:
        raise SnapshotError(f"no manifest at {manifest_path}") from None
    except json.JSONDecodeError as exc:
        raise SnapshotError(f"manifest is not valid JSON: {exc}") from None
    if manifest.get("format") != FORMAT_VERSION:
        raise SnapshotError(f"unsupported snapshot format {manifest.get('format')!r}")

    for name in ("edges.tsv", "corpus.jsonl"):
        file_path = os.path.join(path, name)
        if not os.path.exists(file_path):
            raise SnapshotError(f"snapshot file missing: {name}")
        digest = _sha256(file_path)
        expected = manifest.get("checksums", {}).get(name)
        if digest != expected:
            raise SnapshotError(f"checksum mismatch for {name}")

    try:
        edges = read_edge_list(os.path.join(path, "edges.tsv"))
        docs = read_corpus(os.path.join(path, "corpus.jsonl"))
        graph, _ = load_edges(edges, node_count=int(manifest["nodes"]))
        index = build_index(docs)
    except (ValueError, KeyError) as exc:
        raise SnapshotError(f"snapshot failed to parse: {exc}") from None

    if graph.edge_count != manifest.get("edges"):
        raise SnapshotError(
            f"edge count {graph.edge_count} disagrees with manifest {manifest.get('edges')}"
        )
    if len(docs) != manifest.get("docs"):
        raise SnapshotError(
            f"doc count {len(docs)} disagrees with manifest {manifest.get('docs')}"
        )
    if docs and max(d.doc_id for d in docs) >= graph.node_count:
        raise SnapshotError("doc id outside graph")
    return Snapshot(
        graph=graph,
        index=index,
        docs={d.doc_id: d for d in docs},
        manifest=manifest,
    )
