"""Search over a hyperlinked document corpus with walk-based topic clustering.

The package is organised around one pipeline: load or synthesise a directed
link graph, index the document text, induce the subgraph matched by a query,
partition it into clusters with random walks, and score the partition by the
fraction of links it keeps inside clusters.  Degree distributions are modelled
with a discrete power law throughout, both for fitting real degree data and
for generating synthetic graphs.
"""

from .graph import (
    EdgeFormatError,
    LinkGraph,
    QueryInducedSubgraph,
    degree,
    degree_histogram,
    degree_sequence,
    induce_subgraph,
    load_edges,
    read_edge_list,
    reverse_adjacency,
)
from .textindex import (
    Document,
    DuplicateDocIdError,
    InvertedIndex,
    build_index,
    match_query,
    read_corpus,
    tokenize,
    write_corpus,
)
from .powerlaw import (
    InsufficientSamplesError,
    PowerLawFit,
    fit_beta,
    generate_graph,
    pmf,
    sample_power_law,
    zeta,
)
from .walks import Terminated, Walk, WalkConfig, random_walk, step, walk_phase
from .merge import Clustering, cluster, merge_phase, reference_merge
from .metrics import (
    CSV_HEADER,
    CoverageReport,
    SweepRow,
    coverage,
    report,
    sweep_csv,
    sweep_k,
)
from .gen import make_corpus
from .snapshot import Snapshot, SnapshotError, ingest, load_snapshot
from .rng import stable_seed

__version__ = "0.1.0"

__all__ = [
    "EdgeFormatError",
    "LinkGraph",
    "QueryInducedSubgraph",
    "degree",
    "degree_histogram",
    "degree_sequence",
    "induce_subgraph",
    "load_edges",
    "read_edge_list",
    "reverse_adjacency",
    "Document",
    "DuplicateDocIdError",
    "InvertedIndex",
    "build_index",
    "match_query",
    "read_corpus",
    "tokenize",
    "write_corpus",
    "InsufficientSamplesError",
    "PowerLawFit",
    "fit_beta",
    "generate_graph",
    "pmf",
    "sample_power_law",
    "zeta",
    "Terminated",
    "Walk",
    "WalkConfig",
    "random_walk",
    "step",
    "walk_phase",
    "Clustering",
    "cluster",
    "merge_phase",
    "reference_merge",
    "CoverageReport",
    "CSV_HEADER",
    "SweepRow",
    "coverage",
    "report",
    "sweep_csv",
    "sweep_k",
    "make_corpus",
    "Snapshot",
    "SnapshotError",
    "ingest",
    "load_snapshot",
    "stable_seed",
    "__version__",
]
