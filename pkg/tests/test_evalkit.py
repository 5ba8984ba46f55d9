import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dupwatch.evalkit import (
    GoldError,
    duplicate_rate,
    load_gold,
    make_gold,
    normal_cdf,
    percent_agreement,
    two_proportion_ztest,
    walk_forward,
)
from helpers import corpus_from_records, make_corpus, make_post, synth_records


# ---------------------------------------------------------------------------
# gold clustering

def test_make_gold_rejects_overlap():
    with pytest.raises(GoldError, match="disjoint"):
        make_gold("ai", [["p1", "p2"], ["p2", "p3"]])


def test_gold_must_cover_corpus():
    corpus = make_corpus([make_post("p1", hours=0)])
    gold = make_gold("ai", [["p1", "ghost"]])
    with pytest.raises(GoldError, match="ghost"):
        duplicate_rate(corpus, gold)


def test_load_gold(tmp_path):
    path = tmp_path / "gold.json"
    path.write_text(json.dumps({"class_id": "ai", "clusters": [["p1", "p2"], ["p3"]]}))
    gold = load_gold(path)
    assert gold.class_id == "ai"
    assert len(gold.clusters) == 2


# ---------------------------------------------------------------------------
# walk-forward

def _toy_corpus():
    return make_corpus([
        make_post("p0", title="minimax pruning depth", body="alpha beta cutoff tree", hours=0),
        make_post("p1", title="logistics about exam", body="when is the exam window", hours=1),
        make_post("p2", title="minimax pruning depth", body="alpha beta cutoff tree", hours=2),
    ])


def test_walk_forward_toy_duplicate():
    report = walk_forward(_toy_corpus(), make_gold("ai", [["p0", "p2"], ["p1"]]))
    assert report.eligible == 1
    assert report.hits == 1
    assert report.recall_at_k == 1.0
    assert report.per_post == [("p2", True)]


def test_walk_forward_all_singletons_is_undefined():
    report = walk_forward(_toy_corpus(), make_gold("ai", [["p0"], ["p1"], ["p2"]]))
    assert report.eligible == 0
    assert report.recall_at_k is None


def test_walk_forward_verbatim_copies_full_k():
    records = synth_records(12, seed=42)
    pairs = {6: 1, 9: 4, 11: 3}
    for i, j in pairs.items():
        records[i]["title"] = records[j]["title"]
        records[i]["body"] = records[j]["body"]
        records[i]["tags"] = records[j]["tags"]
    corpus = corpus_from_records(records)
    clusters = [[records[j]["id"], records[i]["id"]] for i, j in pairs.items()]
    clustered = {pid for c in clusters for pid in c}
    clusters += [[r["id"]] for r in records if r["id"] not in clustered]
    report = walk_forward(corpus, make_gold("ai", clusters), k=len(records))
    assert report.eligible == 3
    assert report.recall_at_k == 1.0


# ---------------------------------------------------------------------------
# duplicate rate

def _chrono_corpus(n):
    return make_corpus([make_post(f"p{i:04d}", hours=float(i)) for i in range(n)])


def _profile_gold(n_posts, n_dup_clusters):
    """n_dup_clusters pair-clusters; the rest singletons."""
    ids = [f"p{i:04d}" for i in range(n_posts)]
    clusters = [[ids[2 * j], ids[2 * j + 1]] for j in range(n_dup_clusters)]
    clusters += [[pid] for pid in ids[2 * n_dup_clusters:]]
    return make_gold("ai", clusters)


def test_duplicate_rate_table_profiles():
    dup, rate = duplicate_rate(_chrono_corpus(195), _profile_gold(195, 50))
    assert dup == 50
    assert rate == pytest.approx(50 / 195)
    assert math.floor(1000 * rate) / 10 == 25.6

    # 30/168 = 17.857%; the published one-decimal figure truncates to 17.8
    dup, rate = duplicate_rate(_chrono_corpus(168), _profile_gold(168, 30))
    assert dup == 30
    assert rate == pytest.approx(30 / 168)
    assert math.floor(1000 * rate) / 10 == 17.8


def test_duplicate_rate_singletons():
    assert duplicate_rate(_chrono_corpus(7), _profile_gold(7, 0)) == (0, 0.0)


def test_duplicate_rate_combinatorial_identity():
    rng = random.Random(99)
    for _ in range(25):
        n = rng.randint(1, 60)
        corpus = _chrono_corpus(n)
        ids = [p.id for p in corpus.posts]
        rng.shuffle(ids)
        clusters, i = [], 0
        while i < len(ids):
            size = min(rng.randint(1, 5), len(ids) - i)
            clusters.append(ids[i:i + size])
            i += size
        gold = make_gold("ai", clusters)
        dup, rate = duplicate_rate(corpus, gold)
        assert dup == sum(len(c) - 1 for c in clusters)
        assert rate == pytest.approx(dup / n)


# ---------------------------------------------------------------------------
# percent agreement

def test_agreement_identical():
    assert percent_agreement([True, False, True], [True, False, True]) == 1.0


def test_agreement_one_in_four():
    assert percent_agreement([True, False, False, False], [False] * 4) == 0.75


def test_agreement_majority_class_baseline():
    gold = [True] * 34 + [False] * 166  # 17% positives over 200 pairs
    constant_negative = [False] * 200
    assert percent_agreement(gold, constant_negative) == 0.83


def test_agreement_errors():
    with pytest.raises(ValueError):
        percent_agreement([True], [True, False])
    with pytest.raises(ValueError):
        percent_agreement([], [])


@given(st.lists(st.booleans(), min_size=1, max_size=60), st.data())
def test_agreement_symmetric(a, data):
    b = data.draw(st.lists(st.booleans(), min_size=len(a), max_size=len(a)))
    assert percent_agreement(a, b) == percent_agreement(b, a)


# ---------------------------------------------------------------------------
# z-test

def test_ztest_reference_counts():
    # oracle values from statsmodels.stats.proportion.proportions_ztest
    result = two_proportion_ztest(50, 195, 30, 168)
    assert result.z == pytest.approx(1.7839526996, abs=1e-9)
    assert result.p_one_sided == pytest.approx(0.0372156757, abs=1e-9)
    assert result.pooled_proportion == pytest.approx(80 / 363, abs=1e-12)


def test_ztest_equal_proportions():
    result = two_proportion_ztest(10, 100, 10, 100)
    assert result.z == 0.0
    assert result.p_one_sided == 0.5


def test_ztest_reversed_samples_complement():
    result = two_proportion_ztest(30, 168, 50, 195)
    assert result.p_one_sided == pytest.approx(0.9627843243, abs=1e-9)


def test_ztest_sign_antisymmetry():
    rng = random.Random(4)
    for _ in range(50):
        n1, n2 = rng.randint(2, 400), rng.randint(2, 400)
        x1, x2 = rng.randint(0, n1), rng.randint(0, n2)
        if x1 + x2 == 0 or x1 + x2 == n1 + n2:
            continue
        forward = two_proportion_ztest(x1, n1, x2, n2)
        backward = two_proportion_ztest(x2, n2, x1, n1)
        assert forward.z == pytest.approx(-backward.z, abs=1e-12)


def test_ztest_degenerate_inputs():
    with pytest.raises(ValueError, match="degenerate"):
        two_proportion_ztest(0, 10, 0, 10)
    with pytest.raises(ValueError, match="degenerate"):
        two_proportion_ztest(10, 10, 10, 10)
    with pytest.raises(ValueError):
        two_proportion_ztest(11, 10, 0, 10)
    with pytest.raises(ValueError):
        two_proportion_ztest(1, 0, 0, 10)


def test_normal_cdf_tabulated():
    assert normal_cdf(1.96) == pytest.approx(0.9750021, abs=1e-6)
    assert normal_cdf(0.0) == pytest.approx(0.5, abs=1e-12)
    assert normal_cdf(-1.2815515655) == pytest.approx(0.10, abs=1e-7)


def test_normal_cdf_against_scipy_grid():
    scipy_stats = pytest.importorskip("scipy.stats")
    for x in [i / 10 for i in range(-60, 61)]:
        assert normal_cdf(x) == pytest.approx(scipy_stats.norm.cdf(x), abs=1e-7)
