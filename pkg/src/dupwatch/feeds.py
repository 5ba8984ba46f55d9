"""Home-feed ranking for students and instructors.

Student feed: recent instructor-answered posts ranked by an attention
score, normalized views times normalized followup count damped by a
sigmoid in post age. Instructor feed: unanswered posts filtered by a
two-stage cascade and ordered by unresolved followup count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

from dupwatch.corpus import ClassCorpus, Post, unresolved_followup_count

DEFAULT_FEED_SIZE = 6
DEFAULT_THETA_DAYS = 7.0
DEFAULT_AGE_CUTOFF_DAYS = 21.0


@dataclass(frozen=True)
class FeedItem:
    post_id: str
    importance: float
    views: int
    followups: int
    age_days: float


@dataclass(frozen=True)
class InstructorFeedItem:
    post_id: str
    unresolved_followups: int
    views: int
    followups: int
    age_days: float


def min_max_normalize(values: Sequence[float]) -> list[float]:
    """Map values onto [0,1]; a constant list maps to all ones."""
    if len(values) == 0:
        raise ValueError("cannot normalize an empty list")
    lo, hi = min(values), max(values)
    if hi == lo:
        return [1.0] * len(values)
    span = hi - lo
    return [(v - lo) / span for v in values]


def importance(views_norm: float, followups_norm: float, age_days: float,
               theta_days: float = DEFAULT_THETA_DAYS) -> float:
    """Attention score: v*f damped by a sigmoid of age offset by theta."""
    if not 0.0 <= views_norm <= 1.0 or not 0.0 <= followups_norm <= 1.0:
        raise ValueError("normalized views/followups must lie in [0, 1]")
    if age_days < 0.0:
        raise ValueError("age must be non-negative")
    if theta_days <= 0.0:
        raise ValueError("theta must be positive")
    try:
        denom = 1.0 + math.exp(age_days - theta_days)
    except OverflowError:
        return 0.0
    return views_norm * followups_norm / denom


def _age_days(post: Post, now: datetime) -> float:
    return (now - post.created_at).total_seconds() / 86400.0


def student_feed(
    corpus: ClassCorpus,
    now: datetime | None = None,
    n: int = DEFAULT_FEED_SIZE,
    theta_days: float = DEFAULT_THETA_DAYS,
    age_cutoff_days: float = DEFAULT_AGE_CUTOFF_DAYS,
) -> list[FeedItem]:
    """Top-n instructor-answered posts at most age_cutoff_days old."""
    now = now or datetime.now(timezone.utc)
    candidates = [
        p
        for p in corpus.posts
        if p.instructor_answer is not None and _age_days(p, now) <= age_cutoff_days
    ]
    if not candidates:
        return []
    views_norm = min_max_normalize([p.views for p in candidates])
    fups_norm = min_max_normalize([len(p.followups) for p in candidates])
    items = []
    for p, v, f in zip(candidates, views_norm, fups_norm):
        age = max(0.0, _age_days(p, now))
        items.append(
            FeedItem(
                post_id=p.id,
                importance=importance(v, f, age, theta_days),
                views=p.views,
                followups=len(p.followups),
                age_days=age,
            )
        )
    items.sort(key=lambda it: (-it.importance, it.post_id))
    return items[:n]


def instructor_feed(
    corpus: ClassCorpus,
    n: int = DEFAULT_FEED_SIZE,
    now: datetime | None = None,
) -> list[InstructorFeedItem]:
    """Unanswered posts needing attention, via the filtering cascade.

    Posts lacking an instructor answer; if more than n, narrowed to those
    also lacking a student answer; ordered by unresolved followup count
    (descending, ties by id) and truncated to n.
    """
    now = now or datetime.now(timezone.utc)
    survivors = [p for p in corpus.posts if p.instructor_answer is None]
    if len(survivors) > n:
        survivors = [p for p in survivors if p.student_answer is None]
    survivors = sorted(survivors, key=lambda p: (-unresolved_followup_count(p), p.id))
    return [
        InstructorFeedItem(
            post_id=p.id,
            unresolved_followups=unresolved_followup_count(p),
            views=p.views,
            followups=len(p.followups),
            age_days=max(0.0, _age_days(p, now)),
        )
        for p in survivors[:n]
    ]
