import hashlib
import json

import numpy as np
import pytest

from walkcluster import (
    Document,
    SnapshotError,
    generate_graph,
    induce_subgraph,
    ingest,
    load_snapshot,
    make_corpus,
    match_query,
    write_corpus,
)


def write_inputs(tmp_path, edges, docs):
    edges_path = tmp_path / "edges.tsv"
    with open(edges_path, "w", encoding="utf-8") as fh:
        fh.write("# src\tdst\n")
        for s, d in edges:
            fh.write(f"{s}\t{d}\n")
    corpus_path = tmp_path / "corpus.jsonl"
    write_corpus(corpus_path, docs)
    return edges_path, corpus_path


@pytest.fixture
def ingested(tmp_path):
    g = generate_graph(200, 2.5, seed=3)
    docs = make_corpus(g, seed=3, head_terms=10, tail_vocab=100)
    edges_path, corpus_path = write_inputs(tmp_path, g.edges(), docs)
    out = tmp_path / "snap"
    manifest = ingest(edges_path, corpus_path, out, node_count=g.node_count)
    return g, docs, out, manifest


class TestIngest:
    def test_manifest_counts(self, ingested):
        g, docs, out, manifest = ingested
        assert manifest["format"] == 1
        assert manifest["nodes"] == g.node_count
        assert manifest["edges"] == g.edge_count
        assert manifest["docs"] == len(docs)
        assert manifest["dropped_edges"] == 0
        on_disk = json.loads((out / "manifest").read_text(encoding="utf-8"))
        assert on_disk == manifest

    def test_checksums_match_files(self, ingested):
        _, _, out, manifest = ingested
        for name, digest in manifest["checksums"].items():
            actual = hashlib.sha256((out / name).read_bytes()).hexdigest()
            assert actual == digest

    def test_duplicate_edges_counted_as_dropped(self, tmp_path):
        docs = [Document(i, f"http://example.org/node/{i}", "a b c d e") for i in range(3)]
        edges_path, corpus_path = write_inputs(
            tmp_path, [(0, 1), (0, 1), (2, 2)], docs
        )
        manifest = ingest(edges_path, corpus_path, tmp_path / "s")
        assert manifest["edges"] == 1
        assert manifest["dropped_edges"] == 2

    def test_doc_id_outside_graph_rejected(self, tmp_path):
        docs = [
            Document(0, "http://example.org/node/0", "a b c d e"),
            Document(9, "http://example.org/node/9", "a b c d e"),
        ]
        edges_path, corpus_path = write_inputs(tmp_path, [(0, 1)], docs)
        with pytest.raises(ValueError, match="node_count=2.*9"):
            ingest(edges_path, corpus_path, tmp_path / "s", node_count=2)

    def test_infers_node_count_from_both_inputs(self, tmp_path):
        docs = [Document(7, "http://example.org/node/7", "a b c d e")]
        edges_path, corpus_path = write_inputs(tmp_path, [(0, 1)], docs)
        manifest = ingest(edges_path, corpus_path, tmp_path / "s")
        assert manifest["nodes"] == 8


class TestLoadSnapshot:
    def test_roundtrip(self, ingested):
        g, docs, out, _ = ingested
        snap = load_snapshot(out)
        assert snap.graph == g
        assert list(snap.docs) == [d.doc_id for d in docs]
        assert snap.docs[5] == docs[5]
        assert snap.index.doc_count == len(docs)

    def test_query_subgraph_matches_manual_pipeline(self, ingested):
        g, docs, out, _ = ingested
        snap = load_snapshot(out)
        term = snap.index.top_terms(1)[0][0]
        expect = induce_subgraph(
            g, sorted(match_query(snap.index, term)), query=term
        )
        got = snap.query_subgraph(term)
        assert got.graph == expect.graph
        assert np.array_equal(got.to_global, expect.to_global)
        assert got.query == term

    def test_detects_tampered_file(self, ingested):
        _, _, out, _ = ingested
        path = out / "corpus.jsonl"
        path.write_bytes(path.read_bytes() + b'{"id":0,"url":"u","text":"t"}\n')
        with pytest.raises(SnapshotError, match="checksum"):
            load_snapshot(out)

    def test_rejects_unknown_format_version(self, ingested):
        _, _, out, _ = ingested
        mpath = out / "manifest"
        manifest = json.loads(mpath.read_text(encoding="utf-8"))
        manifest["format"] = 99
        mpath.write_text(json.dumps(manifest), encoding="utf-8")
        with pytest.raises(SnapshotError, match="format"):
            load_snapshot(out)

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(SnapshotError):
            load_snapshot(tmp_path)
