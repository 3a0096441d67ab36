"""Documents, tokenisation, and a conjunctive inverted index.

A token is a maximal run of Unicode letters or digits, lowercased; everything
else separates tokens.  Queries are conjunctive: a document matches when it
contains every query token at least once.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

# \w minus underscore leaves exactly the letter/digit runs.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


class DuplicateDocIdError(ValueError):
    """Two documents claim the same id."""


@dataclass(frozen=True)
class Document:
    doc_id: int
    url: str
    text: str


def tokenize(text: str) -> list[str]:
    """Lowercased letter/digit runs of ``text``, in order, with repeats."""
    return [m.group(0).lower() for m in _TOKEN_RE.finditer(text)]


class InvertedIndex:
    """Maps each term to the sorted array of doc ids containing it."""

    __slots__ = ("postings", "doc_count")

    def __init__(self, postings: dict[str, np.ndarray], doc_count: int):
        self.postings = postings
        self.doc_count = doc_count

    def doc_frequency(self, term: str) -> int:
        hits = self.postings.get(term)
        return 0 if hits is None else int(hits.size)

    def top_terms(self, k: int) -> list[tuple[str, int]]:
        """The ``k`` terms with the most matching documents.

        Ties break lexicographically so the answer does not depend on dict
        insertion order.
        """
        ranked = sorted(
            self.postings.items(), key=lambda item: (-item[1].size, item[0])
        )
        return [(term, int(hits.size)) for term, hits in ranked[:k]]

    def __repr__(self) -> str:
        return f"InvertedIndex(terms={len(self.postings)}, docs={self.doc_count})"


def build_index(docs: Iterable[Document]) -> InvertedIndex:
    """Index documents by their token sets.  Duplicate doc ids are an error."""
    postings: dict[str, list[int]] = {}
    seen: set[int] = set()
    count = 0
    for doc in docs:
        if doc.doc_id in seen:
            raise DuplicateDocIdError(f"doc id {doc.doc_id} appears twice")
        seen.add(doc.doc_id)
        count += 1
        for term in set(tokenize(doc.text)):
            postings.setdefault(term, []).append(doc.doc_id)
    arrays = {
        term: np.array(sorted(ids), dtype=np.int64) for term, ids in postings.items()
    }
    return InvertedIndex(postings=arrays, doc_count=count)


def match_query(index: InvertedIndex, query: str) -> set[int]:
    """Doc ids containing every token of ``query``.

    An empty query (no tokens) matches nothing.  Unknown terms make the
    intersection empty.
    """
    terms = set(tokenize(query))
    if not terms:
        return set()
    # Intersect rarest-first to keep the working set small.
    ordered = sorted(terms, key=lambda t: index.doc_frequency(t))
    hits = index.postings.get(ordered[0])
    if hits is None:
        return set()
    result = set(int(i) for i in hits)
    for term in ordered[1:]:
        hits = index.postings.get(term)
        if hits is None:
            return set()
        result.intersection_update(int(i) for i in hits)
        if not result:
            return set()
    return result


def write_corpus(path: str, docs: Iterable[Document]) -> None:
    """Write documents as JSON lines with keys id, url, text."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(
                json.dumps(
                    {"id": doc.doc_id, "url": doc.url, "text": doc.text},
                    ensure_ascii=False,
                    sort_keys=True,
                )
            )
            fh.write("\n")


def read_corpus(path: str) -> list[Document]:
    """Read a JSON-lines corpus, reporting the line number on any bad row."""
    docs: list[Document] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
                doc = Document(doc_id=int(row["id"]), url=str(row["url"]), text=str(row["text"]))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"corpus line {lineno}: {exc}") from None
            if doc.doc_id < 0:
                raise ValueError(f"corpus line {lineno}: negative doc id")
            docs.append(doc)
    return docs
