"""TF-IDF vector space: fitting, transforming, cosine, and top-k scan.

Weighting is raw term counts times smoothed inverse document frequency
idf(t) = ln((1 + N) / (1 + df(t))) + 1, with document vectors L2-normalized.
Similarity queries are an exhaustive scan over the stored vectors.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from dupwatch import kernels

MODEL_MAGIC = "DWMODEL/1"


@dataclass(frozen=True)
class SparseVector:
    """L2-normalized sparse vector; empty means the zero vector."""

    indices: np.ndarray  # int32, strictly increasing
    values: np.ndarray   # float64, non-zero entries only

    @classmethod
    def empty(cls) -> "SparseVector":
        return cls(np.empty(0, dtype=np.int32), np.empty(0))

    @classmethod
    def from_entries(cls, entries: dict[int, float]) -> "SparseVector":
        items = sorted((i, w) for i, w in entries.items() if w != 0.0)
        idx = np.array([i for i, _ in items], dtype=np.int32)
        val = np.array([w for _, w in items])
        return cls(idx, val)

    @property
    def entries(self) -> dict[int, float]:
        return {int(i): float(w) for i, w in zip(self.indices, self.values)}

    def is_zero(self) -> bool:
        return self.indices.size == 0

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))


def cosine(a: SparseVector, b: SparseVector) -> float:
    """Dot product of two unit-norm sparse vectors; 0.0 if either is zero."""
    if a.is_zero() or b.is_zero():
        return 0.0
    _, ia, ib = np.intersect1d(a.indices, b.indices, assume_unique=True, return_indices=True)
    if ia.size == 0:
        return 0.0
    return min(1.0, float(np.dot(a.values[ia], b.values[ib])))


@dataclass
class TfidfModel:
    """Fitted per-field model: vocabulary, idf table, and document vectors."""

    vocabulary: dict[str, int]
    idf: np.ndarray
    doc_ids: list[str]
    indptr: np.ndarray   # int64 row offsets into indices/data
    indices: np.ndarray  # int32 term indices, sorted within each row
    data: np.ndarray     # float64 normalized tf-idf weights
    n_docs: int = field(init=False)

    def __post_init__(self):
        self.n_docs = len(self.doc_ids)

    def doc_vector(self, i: int) -> SparseVector:
        lo, hi = int(self.indptr[i]), int(self.indptr[i + 1])
        return SparseVector(self.indices[lo:hi], self.data[lo:hi])

    def doc_vector_by_id(self, post_id: str) -> SparseVector:
        return self.doc_vector(self.doc_ids.index(post_id))


def fit(documents: Sequence[tuple[str, Sequence[str]]]) -> TfidfModel:
    """Fit a TF-IDF model over (doc id, token stream) pairs."""
    counts = [Counter(tokens) for _, tokens in documents]
    df = Counter()
    for c in counts:
        df.update(c.keys())
    vocabulary = {term: i for i, term in enumerate(sorted(df))}
    n = len(documents)
    idf = np.ones(len(vocabulary))
    for term, i in vocabulary.items():
        idf[i] = np.log((1.0 + n) / (1.0 + df[term])) + 1.0

    indptr = np.zeros(n + 1, dtype=np.int64)
    row_indices: list[np.ndarray] = []
    row_data: list[np.ndarray] = []
    for row, c in enumerate(counts):
        idx = np.array(sorted(vocabulary[t] for t in c), dtype=np.int32)
        tf = np.array([c[term] for term in sorted(c, key=vocabulary.__getitem__)], dtype=np.float64)
        w = tf * idf[idx]
        norm = np.sqrt(np.dot(w, w))
        if norm > 0.0:
            w /= norm
        row_indices.append(idx)
        row_data.append(w)
        indptr[row + 1] = indptr[row] + idx.size

    indices = np.concatenate(row_indices) if row_indices else np.empty(0, dtype=np.int32)
    data = np.concatenate(row_data) if row_data else np.empty(0)
    return TfidfModel(
        vocabulary=vocabulary,
        idf=idf,
        doc_ids=[doc_id for doc_id, _ in documents],
        indptr=indptr,
        indices=indices.astype(np.int32, copy=False),
        data=data,
    )


def transform(model: TfidfModel, tokens: Iterable[str]) -> SparseVector:
    """Vectorize a token stream; out-of-vocabulary terms are ignored."""
    counts = Counter(t for t in tokens if t in model.vocabulary)
    if not counts:
        return SparseVector.empty()
    idx = np.array(sorted(model.vocabulary[t] for t in counts), dtype=np.int32)
    tf = np.array(
        [counts[t] for t in sorted(counts, key=model.vocabulary.__getitem__)], dtype=np.float64
    )
    w = tf * model.idf[idx]
    w /= np.sqrt(np.dot(w, w))
    return SparseVector(idx, w)


def score_all(model: TfidfModel, query: SparseVector, out: np.ndarray | None = None) -> np.ndarray:
    """Cosine of the query against every stored document vector."""
    return kernels.score_documents(
        model.indptr,
        model.indices,
        model.data,
        query.indices,
        query.values,
        len(model.vocabulary),
        out=out,
    )


def select_top_k(
    scores: np.ndarray, doc_ids: Sequence[str], k: int, exclude: frozenset[str] | set[str] = frozenset()
) -> list[tuple[str, float]]:
    """Top-k by (score desc, id asc); exact even with ties at the boundary."""
    if k < 1:
        raise ValueError("k must be >= 1")
    valid = [i for i in range(len(doc_ids)) if doc_ids[i] not in exclude] if exclude else None
    if valid is not None:
        pool = valid
    else:
        pool = range(len(doc_ids))
    n = len(pool) if valid is not None else len(doc_ids)
    if n == 0:
        return []
    if n > k:
        # only candidates at or above the k-th score can make the cut
        pool_scores = scores[valid] if valid is not None else scores
        kth = np.partition(pool_scores, n - k)[n - k]
        cand = [i for i in pool if scores[i] >= kth]
    else:
        cand = list(pool)
    cand.sort(key=lambda i: (-scores[i], doc_ids[i]))
    return [(doc_ids[i], float(scores[i])) for i in cand[:k]]


def top_k(
    model: TfidfModel,
    query: SparseVector,
    k: int,
    exclude: frozenset[str] | set[str] = frozenset(),
) -> list[tuple[str, float]]:
    """The k most cosine-similar documents to the query."""
    scores = score_all(model, query)
    return select_top_k(scores, model.doc_ids, k, exclude)


def save_model(model: TfidfModel, path: str | Path) -> None:
    """Write the model as a versioned artifact: magic line + JSON body."""
    vocab_terms = [None] * len(model.vocabulary)
    for term, i in model.vocabulary.items():
        vocab_terms[i] = term
    body = {
        "vocabulary": vocab_terms,
        "idf": model.idf.tolist(),
        "doc_ids": model.doc_ids,
        "indptr": model.indptr.tolist(),
        "indices": model.indices.tolist(),
        "data": model.data.tolist(),
    }
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(MODEL_MAGIC + "\n")
        json.dump(body, fh)


def load_model(path: str | Path) -> TfidfModel:
    with Path(path).open("r", encoding="utf-8") as fh:
        magic = fh.readline().rstrip("\n")
        if magic != MODEL_MAGIC:
            raise ValueError(f"{path}: not a {MODEL_MAGIC} artifact (got {magic!r})")
        body = json.load(fh)
    return TfidfModel(
        vocabulary={t: i for i, t in enumerate(body["vocabulary"])},
        idf=np.asarray(body["idf"], dtype=np.float64),
        doc_ids=list(body["doc_ids"]),
        indptr=np.asarray(body["indptr"], dtype=np.int64),
        indices=np.asarray(body["indices"], dtype=np.int32),
        data=np.asarray(body["data"], dtype=np.float64),
    )
