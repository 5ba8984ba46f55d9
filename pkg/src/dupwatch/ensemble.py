"""Four-field TF-IDF ensemble scoring for related-post recommendation.

Each class gets one model per text field (question content, instructor
answer, student answer, followups). A draft is scored against every post
as the weighted average of the four per-field cosines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import numpy as np

from dupwatch import textpipe, vectorspace
from dupwatch.corpus import ClassCorpus, Post, parse_timestamp
from dupwatch.vectorspace import SparseVector, TfidfModel

ENSEMBLE_MAGIC = "DWENSEMBLE/1"


class FieldKind(str, Enum):
    QUESTION_CONTENT = "question_content"
    INSTRUCTOR_ANSWER = "instructor_answer"
    STUDENT_ANSWER = "student_answer"
    FOLLOWUPS = "followups"


# hand-tuned weighting; the question-content model must carry the largest weight
DEFAULT_WEIGHTS: dict[FieldKind, float] = {
    FieldKind.QUESTION_CONTENT: 0.70,
    FieldKind.INSTRUCTOR_ANSWER: 0.10,
    FieldKind.STUDENT_ANSWER: 0.10,
    FieldKind.FOLLOWUPS: 0.10,
}

WEIGHT_SUM_TOL = 1e-9


class WeightError(ValueError):
    """Invalid ensemble weight configuration."""


class EmptyDraftError(ValueError):
    """A scoring request must carry at least one non-empty field."""


@dataclass(frozen=True)
class DraftQuestion:
    title: str = ""
    body: str = ""
    tags: tuple[str, ...] = ()

    def text(self) -> str:
        return " ".join([self.title, self.body, *self.tags])

    def is_empty(self) -> bool:
        return not (self.title.strip() or self.body.strip() or any(t.strip() for t in self.tags))


@dataclass(frozen=True)
class Recommendation:
    post_id: str
    score: float
    per_field_scores: dict[FieldKind, float]


@dataclass
class EnsembleModel:
    class_id: str
    models: dict[FieldKind, TfidfModel]
    weights: dict[FieldKind, float]
    trained_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))

    @property
    def post_ids(self) -> list[str]:
        return self.models[FieldKind.QUESTION_CONTENT].doc_ids

    @property
    def n_posts(self) -> int:
        return len(self.post_ids)


def field_text(post: Post, kind: FieldKind) -> str:
    """The raw text a field model sees for one post ('' when absent)."""
    if kind is FieldKind.QUESTION_CONTENT:
        return " ".join([post.title, post.body, *post.tags])
    if kind is FieldKind.INSTRUCTOR_ANSWER:
        return post.instructor_answer or ""
    if kind is FieldKind.STUDENT_ANSWER:
        return post.student_answer or ""
    parts = []
    for f in post.followups:
        parts.append(f.text)
        parts.extend(f.contributions)
    return " ".join(parts)


def validate_weights(weights: dict[FieldKind, float]) -> None:
    if set(weights) != set(FieldKind):
        missing = sorted(k.value for k in set(FieldKind) - set(weights))
        raise WeightError(f"weights must cover all four fields; missing {missing}")
    if any(w < 0 for w in weights.values()):
        raise WeightError("weights must be non-negative")
    total = sum(weights.values())
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise WeightError(f"weights must sum to 1.0, got {total}")
    qc = weights[FieldKind.QUESTION_CONTENT]
    if any(weights[k] >= qc for k in FieldKind if k is not FieldKind.QUESTION_CONTENT):
        raise WeightError("question-content weight must be strictly the largest")


def fit_ensemble(
    corpus: ClassCorpus, weights: dict[FieldKind, float] | None = None
) -> EnsembleModel:
    """Fit all four field models over the corpus (absent fields = empty docs)."""
    weights = dict(DEFAULT_WEIGHTS if weights is None else weights)
    validate_weights(weights)
    models = {}
    for kind in FieldKind:
        docs = [(p.id, textpipe.preprocess(field_text(p, kind))) for p in corpus.posts]
        models[kind] = vectorspace.fit(docs)
    return EnsembleModel(class_id=corpus.class_id, models=models, weights=weights)


def _score_arrays(
    ensemble: EnsembleModel, draft: DraftQuestion
) -> tuple[list[str], np.ndarray, dict[FieldKind, np.ndarray]]:
    if draft.is_empty():
        raise EmptyDraftError("draft has no title, body, or tags")
    if ensemble.n_posts == 0:
        raise ValueError("ensemble was fitted over an empty corpus")
    tokens = textpipe.preprocess(draft.text())
    per_field: dict[FieldKind, np.ndarray] = {}
    total = np.zeros(ensemble.n_posts)
    for kind in FieldKind:
        model = ensemble.models[kind]
        query = vectorspace.transform(model, tokens)
        scores = vectorspace.score_all(model, query)
        per_field[kind] = scores
        total += ensemble.weights[kind] * scores
    return ensemble.post_ids, total, per_field


def score_draft(ensemble: EnsembleModel, draft: DraftQuestion) -> list[Recommendation]:
    """One Recommendation per post: weighted average of per-field cosines."""
    ids, total, per_field = _score_arrays(ensemble, draft)
    return [
        Recommendation(
            post_id=ids[i],
            score=float(total[i]),
            per_field_scores={k: float(per_field[k][i]) for k in FieldKind},
        )
        for i in range(len(ids))
    ]


def recommend(ensemble: EnsembleModel, draft: DraftQuestion, k: int = 5) -> list[Recommendation]:
    """Top-k recommendations, best first; zero-score posts are omitted."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ids, total, per_field = _score_arrays(ensemble, draft)
    ranked = vectorspace.select_top_k(total, ids, k)
    index_of = {post_id: i for i, post_id in enumerate(ids)}
    out = []
    for post_id, score in ranked:
        if score <= 0.0:
            continue
        i = index_of[post_id]
        out.append(
            Recommendation(
                post_id=post_id,
                score=score,
                per_field_scores={kind: float(per_field[kind][i]) for kind in FieldKind},
            )
        )
    return out


def save_ensemble(ensemble: EnsembleModel, out_dir: str | Path) -> None:
    """Write the four model artifacts plus a manifest into a directory."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "magic": ENSEMBLE_MAGIC,
        "class_id": ensemble.class_id,
        "trained_at": ensemble.trained_at.isoformat(),
        "weights": {k.value: ensemble.weights[k] for k in FieldKind},
        "fields": {k.value: f"{k.value}.dwm" for k in FieldKind},
    }
    for kind in FieldKind:
        vectorspace.save_model(ensemble.models[kind], out_dir / manifest["fields"][kind.value])
    (out_dir / "ensemble.json").write_text(json.dumps(manifest, indent=2), encoding="utf-8")


def load_ensemble(in_dir: str | Path) -> EnsembleModel:
    in_dir = Path(in_dir)
    manifest = json.loads((in_dir / "ensemble.json").read_text(encoding="utf-8"))
    if manifest.get("magic") != ENSEMBLE_MAGIC:
        raise ValueError(f"{in_dir}: not a {ENSEMBLE_MAGIC} artifact")
    models = {
        FieldKind(name): vectorspace.load_model(in_dir / fname)
        for name, fname in manifest["fields"].items()
    }
    weights = {FieldKind(name): float(w) for name, w in manifest["weights"].items()}
    validate_weights(weights)
    return EnsembleModel(
        class_id=manifest["class_id"],
        models=models,
        weights=weights,
        trained_at=parse_timestamp(manifest["trained_at"]),
    )
