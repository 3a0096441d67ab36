import numpy as np
import pytest

from walkcluster import (
    Document,
    build_index,
    generate_graph,
    ingest,
    load_edges,
    load_snapshot,
    make_corpus,
    write_corpus,
)


def graph_from_edges(edges, node_count=None):
    g, _ = load_edges(edges, node_count=node_count)
    return g


@pytest.fixture
def two_triangles():
    # 0-1-2 and 3-4-5 cycles joined by a single bridge edge 2->3.
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]
    return graph_from_edges(edges)


@pytest.fixture
def path_graph():
    return graph_from_edges([(0, 1), (1, 2)])


@pytest.fixture(scope="session")
def small_snapshot(tmp_path_factory):
    """A 300-node generated snapshot shared by service and CLI tests."""
    root = tmp_path_factory.mktemp("snap")
    g = generate_graph(300, 2.5, seed=5)
    docs = make_corpus(g, seed=5, head_terms=20, tail_vocab=400)
    edges_path = root / "edges.tsv"
    with open(edges_path, "w", encoding="utf-8") as fh:
        fh.write("# src\tdst\n")
        for s, d in g.edges():
            fh.write(f"{s}\t{d}\n")
    corpus_path = root / "corpus.jsonl"
    write_corpus(corpus_path, docs)
    out = root / "snapshot"
    ingest(edges_path, corpus_path, out, node_count=g.node_count)
    return load_snapshot(out)


@pytest.fixture
def handmade_snapshot(tmp_path):
    """Two 3-cycles with no links between them, one shared query term."""
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    docs = [
        Document(i, f"http://example.org/node/{i}", f"alpha item{i}")
        for i in range(6)
    ]
    edges_path = tmp_path / "edges.tsv"
    with open(edges_path, "w", encoding="utf-8") as fh:
        for s, d in edges:
            fh.write(f"{s}\t{d}\n")
    corpus_path = tmp_path / "corpus.jsonl"
    write_corpus(corpus_path, docs)
    out = tmp_path / "snapshot"
    ingest(edges_path, corpus_path, out)
    return load_snapshot(out)


@pytest.fixture
def rng():
    return np.random.default_rng(99)
