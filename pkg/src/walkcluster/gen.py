"""Synthetic document corpora over a generated link graph.

Each node becomes one document.  Vocabulary has two layers:

* Head terms follow a Zipf-like rank-size law: the term at rank r is
  assigned to a connected region of roughly
  ``head_max_fraction * n * r**-head_exponent`` nodes, grown by seeded
  breadth-first expansion over links in either direction.  Regions, not
  uniform samples, because a term's matching set should look like a topic:
  the induced subgraph keeps its link structure the way a real crawl
  segment does.
* Tail terms are uniform filler used to top every document up to its target
  length.  They are two orders of magnitude rarer than head terms, so the
  top of the document-frequency ranking is exactly the head.

A node joins at most ``region_budget`` regions.  Without that bound the
popular hubs end up in nearly every region and overflow the per-document
term limit; evicting them afterwards would punch holes in the regions.
Bounding membership during growth lets later regions route around saturated
nodes while staying internally connected.

Every document carries between ``min_terms`` and ``max_terms`` distinct
terms; the region budget keeps head membership under the ceiling, and
filler terms pad up to a per-document target.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .graph import LinkGraph, reverse_adjacency
from .textindex import Document

_CONSONANTS = "bdfgklmnprstvz"
_VOWELS = "aeiou"
_BASE = len(_CONSONANTS) * len(_VOWELS)


def _word(code: int) -> str:
    # Base-70 consonant-vowel syllables; code ranges keep layers disjoint.
    syllables = []
    while code:
        code, s = divmod(code, _BASE)
        syllables.append(_CONSONANTS[s // len(_VOWELS)] + _VOWELS[s % len(_VOWELS)])
    return "".join(reversed(syllables))


def head_word(rank: int) -> str:
    """Name of the head term at 1-based frequency rank ``rank``."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    return _word(_BASE + rank - 1)


def tail_word(t: int) -> str:
    return _word(_BASE * _BASE + t)


def _grow_region(
    g: LinkGraph,
    rev: tuple[np.ndarray, np.ndarray],
    size: int,
    rng: np.random.Generator,
    available: np.ndarray,
) -> list[int]:
    """A connected-ish node set of ``size`` members drawn from ``available``."""
    n = g.node_count
    size = min(size, int(available.sum()))
    rev_indptr, rev_adj = rev
    chosen: set[int] = set()
    queue: deque[int] = deque()

    def usable(v: int) -> bool:
        return bool(available[v]) and v not in chosen

    def fresh_seed() -> int:
        # Seed at a modestly linked node.  Isolated seeds stall the
        # frontier; hub seeds grow star-shaped regions whose members keep
        # almost none of their links inside, which skews subgraph degrees.
        cands = [int(c) for c in rng.integers(0, n, size=8) if usable(int(c))]
        if not cands:
            while True:
                v = int(rng.integers(0, n))
                if usable(v):
                    return v

        def total_degree(v: int) -> int:
            return g.out_degree(v) + int(g.in_degrees[v])

        linked = [v for v in cands if total_degree(v) >= 2]
        if linked:
            return min(linked, key=total_degree)
        return max(cands, key=total_degree)

    for _ in range(min(int(1 + rng.integers(0, 3)), size)):
        v = fresh_seed()
        chosen.add(v)
        queue.append(v)
    while len(chosen) < size:
        if not queue:
            v = fresh_seed()
            chosen.add(v)
            queue.append(v)
            continue
        v = queue.popleft()
        fwd = g.out_neighbors(v)
        back = rev_adj[rev_indptr[v] : rev_indptr[v + 1]]
        nbrs = np.concatenate((fwd, back))
        for idx in rng.permutation(nbrs.size):
            w = int(nbrs[idx])
            if usable(w):
                chosen.add(w)
                queue.append(w)
                if len(chosen) >= size:
                    break
    return sorted(chosen)


def make_corpus(
    g: LinkGraph,
    seed: int = 0,
    *,
    head_terms: int = 150,
    head_max_fraction: float = 0.08,
    head_exponent: float = 0.4,
    tail_vocab: int = 5000,
    min_terms: int = 5,
    max_terms: int = 20,
    region_budget: int = 16,
) -> list[Document]:
    """One synthetic document per node of ``g``, reproducible from ``seed``."""
    n = g.node_count
    if n < 1:
        raise ValueError("graph has no nodes")
    if head_terms < 1 or tail_vocab < max_terms:
        raise ValueError("need at least one head term and tail_vocab >= max_terms")
    if not 1 <= min_terms <= max_terms:
        raise ValueError("need 1 <= min_terms <= max_terms")
    if not 1 <= region_budget <= max_terms:
        raise ValueError("need 1 <= region_budget <= max_terms")

    children = np.random.SeedSequence(seed).spawn(head_terms + 2)
    rev = reverse_adjacency(g)

    memberships = np.zeros(n, dtype=np.int64)
    node_heads: list[list[int]] = [[] for _ in range(n)]
    for rank in range(1, head_terms + 1):
        target = max(3, round(n * head_max_fraction * rank**-head_exponent))
        rng = np.random.default_rng(children[rank - 1])
        for v in _grow_region(g, rev, target, rng, memberships < region_budget):
            memberships[v] += 1
            node_heads[v].append(rank)

    targets = np.random.default_rng(children[-2]).integers(
        min_terms, max_terms + 1, size=n
    )
    filler_rng = np.random.default_rng(children[-1])

    docs: list[Document] = []
    for v in range(n):
        terms = [head_word(r) for r in node_heads[v]]
        have = set(terms)
        need = int(targets[v]) - len(terms)
        while need > 0:
            for t in filler_rng.integers(0, tail_vocab, size=need):
                w = tail_word(int(t))
                if w not in have:
                    have.add(w)
                    terms.append(w)
            need = int(targets[v]) - len(terms)
        docs.append(
            Document(
                doc_id=v,
                url=f"http://example.org/node/{v}",
                text=" ".join(terms),
            )
        )
    return docs
