"""Shared test utilities: corpus builders, synthetic data, dense oracles."""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone

import numpy as np

from dupwatch.corpus import ClassCorpus, Followup, Post
from dupwatch.ensemble import FieldKind, field_text
from dupwatch.textpipe import preprocess

EPOCH = datetime(2025, 1, 6, 12, 0, 0, tzinfo=timezone.utc)


def ts(hours: float) -> datetime:
    return EPOCH + timedelta(hours=hours)


def make_post(
    post_id: str,
    *,
    class_id: str = "ai",
    title: str = "",
    body: str = "",
    tags: tuple[str, ...] = (),
    created_at: datetime | None = None,
    hours: float = 0.0,
    views: int = 0,
    instructor_answer: str | None = None,
    student_answer: str | None = None,
    followups: tuple[Followup, ...] = (),
) -> Post:
    return Post(
        id=post_id,
        class_id=class_id,
        title=title,
        body=body,
        created_at=created_at or ts(hours),
        tags=tags,
        views=views,
        instructor_answer=instructor_answer,
        student_answer=student_answer,
        followups=followups,
    )


def make_corpus(posts, class_id: str = "ai") -> ClassCorpus:
    return ClassCorpus(class_id=class_id, posts=tuple(sorted(posts, key=lambda p: p.created_at)))


def write_corpus_file(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")


# ---------------------------------------------------------------------------
# synthetic corpora

_TOPIC_WORDS = [
    "gradient", "heuristic", "minimax", "pruning", "entropy", "bayes",
    "markov", "viterbi", "quaternion", "jacobian", "tensor", "lattice",
    "annealing", "perceptron", "backprop", "convolution", "recursion",
    "memoization", "hashing", "traversal", "dijkstra", "astar", "bellman",
    "kalman", "particle", "sampling", "posterior", "likelihood", "sigmoid",
    "softmax", "dropout", "regularization", "overfitting", "validation",
    "submission", "autograder", "timeout", "deadline", "rubric", "notebook",
    "dataset", "pipeline", "checkpoint", "epoch", "batch", "vectorize",
    "normalize", "tokenize", "parser", "grammar", "automaton", "complexity",
    "invariant", "assertion", "segfault", "overflow", "underflow", "precision",
    "landmark", "octree", "bitboard", "rollout", "playout", "simulator",
    "frontier", "expansion", "admissible", "consistent", "manhattan",
    "euclidean", "cosine", "jaccard", "stemming", "stopword", "unigram",
    "bigram", "indexing", "retrieval", "ranking", "recall", "evaluation",
]

_FILLER_WORDS = [
    "question", "problem", "assignment", "project", "lecture", "homework",
    "confused", "error", "issue", "help", "stuck", "failing", "passing",
    "implement", "approach", "understand", "result", "output", "expected",
    "getting", "trying", "anyone", "else", "seeing", "work", "code",
    "function", "value", "test", "case", "point", "grade", "section",
]


def _sentence(rng: random.Random, topic: list[str], n_words: int) -> str:
    words = []
    for _ in range(n_words):
        pool = topic if rng.random() < 0.45 else _FILLER_WORDS
        words.append(rng.choice(pool))
    return " ".join(words)


def synth_post_record(rng: random.Random, i: int, class_id: str = "ai",
                      base_hours: float = 0.0) -> dict:
    """One random post as a corpus-file record."""
    topic = rng.sample(_TOPIC_WORDS, 6)
    record = {
        "id": f"p{i:05d}",
        "class_id": class_id,
        "title": _sentence(rng, topic, rng.randint(4, 9)),
        "body": _sentence(rng, topic, rng.randint(20, 80)),
        "tags": rng.sample(["hw1", "hw2", "hw3", "exam", "logistics", "general"], rng.randint(0, 2)),
        "created_at": (EPOCH + timedelta(hours=base_hours + 2.0 * i)).isoformat(),
        "views": rng.randint(0, 400),
    }
    if rng.random() < 0.6:
        record["instructor_answer"] = _sentence(rng, topic, rng.randint(10, 30))
    if rng.random() < 0.4:
        record["student_answer"] = _sentence(rng, topic, rng.randint(10, 30))
    followups = []
    for _ in range(rng.randint(0, 4)):
        followups.append({
            "text": _sentence(rng, topic, rng.randint(4, 15)),
            "resolved": rng.random() < 0.5,
            "contributions": [_sentence(rng, topic, rng.randint(3, 10))
                              for _ in range(rng.randint(0, 2))],
        })
    if followups:
        record["followups"] = followups
    return record


def synth_records(n: int, seed: int, class_id: str = "ai") -> list[dict]:
    rng = random.Random(seed)
    return [synth_post_record(rng, i, class_id) for i in range(n)]


def corpus_from_records(records, class_id: str = "ai") -> ClassCorpus:
    from dupwatch.corpus import post_from_record

    posts = tuple(sorted((post_from_record(r) for r in records), key=lambda p: p.created_at))
    return ClassCorpus(class_id=class_id, posts=posts)


def mutate_text(rng: random.Random, text: str, delete_prob: float = 0.2,
                noise_words: int = 3) -> str:
    """Near-duplicate text: token deletion plus a few paraphrase words."""
    tokens = [t for t in text.split() if rng.random() > delete_prob]
    for _ in range(noise_words):
        tokens.insert(rng.randrange(len(tokens) + 1), rng.choice(_FILLER_WORDS))
    return " ".join(tokens)


def synth_corpus_with_duplicates(n_posts: int, n_duplicates: int, seed: int,
                                 class_id: str = "ai"):
    """Corpus where n_duplicates later posts are noisy copies of earlier ones.

    Returns (records, clusters): duplicate records rewrite the title/body of
    an already-placed original with 20% token deletion plus paraphrase
    noise; clusters pair each original with its duplicates. Timestamps and
    ids are chronological, so every duplicate has an earlier cluster-mate.
    """
    rng = random.Random(seed)
    n_originals = n_posts - n_duplicates
    burn_in = max(3, n_originals // 10)
    tail = ["orig"] * (n_originals - burn_in) + ["dup"] * n_duplicates
    rng.shuffle(tail)
    slots = ["orig"] * burn_in + tail

    records: list[dict] = []
    original_rows: list[int] = []
    clusters: dict[str, list[str]] = {}
    for i, kind in enumerate(slots):
        record = synth_post_record(rng, i, class_id)
        if kind == "dup":
            source = records[rng.choice(original_rows)]
            record["title"] = mutate_text(rng, source["title"], noise_words=1)
            record["body"] = mutate_text(rng, source["body"], noise_words=3)
            record["tags"] = source.get("tags", [])
            clusters.setdefault(source["id"], [source["id"]]).append(record["id"])
        else:
            original_rows.append(len(records))
        records.append(record)

    clustered = {pid for ids in clusters.values() for pid in ids}
    singles = [[r["id"]] for r in records if r["id"] not in clustered]
    return records, list(clusters.values()) + singles


# ---------------------------------------------------------------------------
# independent dense oracles

def dense_tfidf(token_streams: list[list[str]]):
    """Reference TF-IDF: dense matrix with smoothed idf and L2 rows."""
    vocab = sorted({t for stream in token_streams for t in stream})
    index = {t: j for j, t in enumerate(vocab)}
    n, v = len(token_streams), len(vocab)
    tf = np.zeros((n, v))
    for i, stream in enumerate(token_streams):
        for t in stream:
            tf[i, index[t]] += 1.0
    df = (tf > 0).sum(axis=0)
    idf = np.log((1.0 + n) / (1.0 + df)) + 1.0
    mat = tf * idf
    norms = np.linalg.norm(mat, axis=1)
    nonzero = norms > 0
    mat[nonzero] = mat[nonzero] / norms[nonzero, None]
    return vocab, idf, mat


def dense_transform(vocab, idf, tokens: list[str]) -> np.ndarray:
    index = {t: j for j, t in enumerate(vocab)}
    vec = np.zeros(len(vocab))
    for t in tokens:
        if t in index:
            vec[index[t]] += 1.0
    vec = vec * idf
    norm = np.linalg.norm(vec)
    return vec / norm if norm > 0 else vec


def brute_force_ranking(corpus: ClassCorpus, draft_tokens: list[str],
                        weights: dict[FieldKind, float], k: int) -> list[tuple[str, float]]:
    """Independent weighted-cosine ranking over dense per-field models."""
    totals = np.zeros(len(corpus.posts))
    for kind in FieldKind:
        streams = [preprocess(field_text(p, kind)) for p in corpus.posts]
        vocab, idf, mat = dense_tfidf(streams)
        q = dense_transform(vocab, idf, draft_tokens)
        totals += weights[kind] * (mat @ q)
    order = sorted(range(len(corpus.posts)),
                   key=lambda i: (-totals[i], corpus.posts[i].id))
    out = []
    for i in order[:k]:
        if totals[i] > 0.0:
            out.append((corpus.posts[i].id, float(totals[i])))
    return out
