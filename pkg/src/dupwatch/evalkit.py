"""Measurement tooling: walk-forward retrieval recall, duplicate-rate
reports, inter-rater percent agreement, and a one-sided two-proportion
z-test.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from dupwatch.corpus import ClassCorpus
from dupwatch.ensemble import DraftQuestion, FieldKind, fit_ensemble, recommend


class GoldError(ValueError):
    """Malformed or inconsistent gold clustering."""


@dataclass(frozen=True)
class GoldClustering:
    """A partition of post ids into duplicate clusters (singletons allowed)."""

    class_id: str
    clusters: tuple[frozenset[str], ...]

    def cluster_index(self) -> dict[str, int]:
        index: dict[str, int] = {}
        for ci, cluster in enumerate(self.clusters):
            for post_id in cluster:
                index[post_id] = ci
        return index


def make_gold(class_id: str, clusters: Sequence[Sequence[str]]) -> GoldClustering:
    """Build and validate a clustering from id lists."""
    frozen = tuple(frozenset(c) for c in clusters)
    seen: set[str] = set()
    for cluster in frozen:
        if not cluster:
            raise GoldError("clusters must be non-empty")
        overlap = seen & cluster
        if overlap:
            raise GoldError(f"clusters are not disjoint: {sorted(overlap)}")
        seen |= cluster
    return GoldClustering(class_id=class_id, clusters=frozen)


def load_gold(path: str | Path) -> GoldClustering:
    """Load a gold clustering file: {"class_id": ..., "clusters": [[ids]]}."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict) or "clusters" not in raw:
        raise GoldError(f"{path}: expected an object with a 'clusters' key")
    return make_gold(raw.get("class_id", ""), raw["clusters"])


def _check_coverage(corpus: ClassCorpus, gold: GoldClustering) -> None:
    corpus_ids = {p.id for p in corpus.posts}
    unknown = {pid for c in gold.clusters for pid in c} - corpus_ids
    if unknown:
        raise GoldError(f"gold references ids missing from the corpus: {sorted(unknown)[:5]}")


@dataclass
class WalkForwardReport:
    eligible: int
    hits: int
    recall_at_k: float | None
    k: int
    per_post: list[tuple[str, bool]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "eligible": self.eligible,
            "hits": self.hits,
            "recall_at_k": self.recall_at_k,
            "k": self.k,
            "per_post": [{"post_id": pid, "hit": hit} for pid, hit in self.per_post],
        }


def walk_forward(
    corpus: ClassCorpus,
    gold: GoldClustering,
    k: int = 5,
    weights: dict[FieldKind, float] | None = None,
) -> WalkForwardReport:
    """Chronological retrieval evaluation.

    For each post whose cluster holds an earlier post, an ensemble is
    fitted on all strictly earlier posts and queried with the post's own
    title/body/tags; a hit means some returned id shares its cluster.
    """
    _check_coverage(corpus, gold)
    index = gold.cluster_index()
    per_post: list[tuple[str, bool]] = []
    hits = 0
    for i, post in enumerate(corpus.posts):
        if i == 0 or post.id not in index:
            continue
        cluster = gold.clusters[index[post.id]]
        earlier_ids = {p.id for p in corpus.posts[:i]}
        if not cluster & earlier_ids:
            continue
        ens = fit_ensemble(corpus.prefix(i), weights)
        draft = DraftQuestion(title=post.title, body=post.body, tags=post.tags)
        recs = recommend(ens, draft, k)
        hit = any(r.post_id in cluster for r in recs)
        per_post.append((post.id, hit))
        hits += int(hit)
    eligible = len(per_post)
    recall = hits / eligible if eligible else None
    return WalkForwardReport(eligible=eligible, hits=hits, recall_at_k=recall, k=k, per_post=per_post)


def duplicate_rate(corpus: ClassCorpus, gold: GoldClustering) -> tuple[int, float]:
    """Count posts whose cluster holds a chronologically earlier post."""
    _check_coverage(corpus, gold)
    index = gold.cluster_index()
    seen_by_cluster: dict[int, int] = {}
    duplicates = 0
    for post in corpus.posts:
        ci = index.get(post.id)
        if ci is None:
            continue
        if seen_by_cluster.get(ci, 0) > 0:
            duplicates += 1
        seen_by_cluster[ci] = seen_by_cluster.get(ci, 0) + 1
    total = len(corpus.posts)
    return duplicates, (duplicates / total if total else 0.0)


def percent_agreement(labels_a: Sequence[bool], labels_b: Sequence[bool]) -> float:
    """Fraction of positions where two raters assigned the same label."""
    if len(labels_a) != len(labels_b):
        raise ValueError("label lists must have equal length")
    if not labels_a:
        raise ValueError("label lists must be non-empty")
    return sum(a == b for a, b in zip(labels_a, labels_b)) / len(labels_a)


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


@dataclass(frozen=True)
class ZTestResult:
    z: float
    p_one_sided: float
    pooled_proportion: float

    def as_dict(self) -> dict:
        return {"z": self.z, "p_one_sided": self.p_one_sided,
                "pooled_proportion": self.pooled_proportion}


def two_proportion_ztest(x1: int, n1: int, x2: int, n2: int) -> ZTestResult:
    """One-sided pooled z-test of H1: x1/n1 > x2/n2."""
    for x, n in ((x1, n1), (x2, n2)):
        if n < 1:
            raise ValueError("sample sizes must be >= 1")
        if not 0 <= x <= n:
            raise ValueError("successes must lie in [0, n]")
    pooled = (x1 + x2) / (n1 + n2)
    if pooled in (0.0, 1.0):
        raise ValueError("degenerate samples: pooled proportion is 0 or 1")
    se = math.sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2))
    z = (x1 / n1 - x2 / n2) / se
    return ZTestResult(z=z, p_one_sided=1.0 - normal_cdf(z), pooled_proportion=pooled)
