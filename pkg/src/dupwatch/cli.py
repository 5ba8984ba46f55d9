"""Command-line interface: train, recommend, feed, eval, serve."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from dupwatch import evalkit, feeds, service
from dupwatch.corpus import load_corpus, parse_timestamp
from dupwatch.ensemble import (
    DraftQuestion,
    FieldKind,
    fit_ensemble,
    load_ensemble,
    recommend as rank_posts,
    save_ensemble,
)


def _load_weights(path: str | None):
    if path is None:
        return None
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return {FieldKind(k): float(v) for k, v in raw.items()}


def _print_report(payload: dict, rows: list[tuple], headers: tuple[str, ...]) -> None:
    """One-line JSON followed by a human-readable table."""
    click.echo(json.dumps(payload))
    if not rows:
        return
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) for i, h in enumerate(headers)]
    click.echo("  ".join(str(h).ljust(w) for h, w in zip(headers, widths)))
    for row in rows:
        click.echo("  ".join(str(v).ljust(w) for v, w in zip(row, widths)))


@click.group()
def main():
    """Forum duplicate-question recommender toolkit."""


@main.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--weights", "weights_path", type=click.Path(exists=True), default=None,
              help="JSON file mapping field names to weights.")
def train(corpus_path, out_dir, weights_path):
    """Fit the four-field ensemble for one corpus and save it."""
    corpus = load_corpus(corpus_path)
    ens = fit_ensemble(corpus, _load_weights(weights_path))
    save_ensemble(ens, out_dir)
    click.echo(json.dumps({
        "class_id": ens.class_id,
        "n_posts": ens.n_posts,
        "trained_at": ens.trained_at.isoformat(),
        "out": str(out_dir),
    }))


@main.command("recommend")
@click.option("--model", "model_dir", required=True, type=click.Path(exists=True))
@click.option("--title", default="")
@click.option("--body", default="")
@click.option("--tags", multiple=True)
@click.option("-k", "k", default=5, show_default=True)
def recommend_cmd(model_dir, title, body, tags, k):
    """Rank stored posts against a draft question."""
    ens = load_ensemble(model_dir)
    recs = rank_posts(ens, DraftQuestion(title=title, body=body, tags=tuple(tags)), k)
    payload = {
        "recommendations": [
            {"post_id": r.post_id, "score": r.score,
             "per_field_scores": {kind.value: v for kind, v in r.per_field_scores.items()}}
            for r in recs
        ]
    }
    rows = [(r.post_id, f"{r.score:.4f}") for r in recs]
    _print_report(payload, rows, ("post_id", "score"))


@main.command()
@click.argument("role", type=click.Choice(["student", "instructor"]))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--now", "now_str", default=None, help="Reference time (ISO-8601); default: current time.")
@click.option("-n", "n", default=feeds.DEFAULT_FEED_SIZE, show_default=True)
@click.option("--theta", "theta_days", default=feeds.DEFAULT_THETA_DAYS, show_default=True)
def feed(role, corpus_path, now_str, n, theta_days):
    """Print the student or instructor home feed for a corpus."""
    corpus = load_corpus(corpus_path)
    now = parse_timestamp(now_str) if now_str else None
    if role == "student":
        items = feeds.student_feed(corpus, now=now, n=n, theta_days=theta_days)
        payload = {"items": [it.__dict__ for it in items]}
        rows = [(it.post_id, f"{it.importance:.4f}", it.views, it.followups, f"{it.age_days:.1f}")
                for it in items]
        _print_report(payload, rows, ("post_id", "importance", "views", "followups", "age_days"))
    else:
        items = feeds.instructor_feed(corpus, n=n, now=now)
        payload = {"items": [it.__dict__ for it in items]}
        rows = [(it.post_id, it.unresolved_followups, it.views, it.followups)
                for it in items]
        _print_report(payload, rows, ("post_id", "unresolved_followups", "views", "followups"))


@main.group("eval")
def eval_group():
    """Measurement commands."""


@eval_group.command("walk-forward")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--gold", "gold_path", required=True, type=click.Path(exists=True))
@click.option("-k", "k", default=5, show_default=True)
@click.option("--weights", "weights_path", type=click.Path(exists=True), default=None)
def walk_forward_cmd(corpus_path, gold_path, k, weights_path):
    """Chronological recall@k against a gold duplicate clustering."""
    corpus = load_corpus(corpus_path)
    gold = evalkit.load_gold(gold_path)
    report = evalkit.walk_forward(corpus, gold, k=k, weights=_load_weights(weights_path))
    recall = "undefined" if report.recall_at_k is None else f"{report.recall_at_k:.4f}"
    rows = [(report.eligible, report.hits, recall, report.k)]
    _print_report(report.as_dict(), rows, ("eligible", "hits", "recall@k", "k"))


@eval_group.command("duplicate-rate")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--gold", "gold_path", required=True, type=click.Path(exists=True))
def duplicate_rate_cmd(corpus_path, gold_path):
    """Share of posts preceded by a same-cluster post."""
    corpus = load_corpus(corpus_path)
    gold = evalkit.load_gold(gold_path)
    duplicates, rate = evalkit.duplicate_rate(corpus, gold)
    payload = {"posts": len(corpus.posts), "duplicates": duplicates, "rate": rate}
    _print_report(payload, [(len(corpus.posts), duplicates, f"{100 * rate:.1f}%")],
                  ("posts", "duplicates", "rate"))


@eval_group.command("ztest")
@click.option("--x1", required=True, type=int)
@click.option("--n1", required=True, type=int)
@click.option("--x2", required=True, type=int)
@click.option("--n2", required=True, type=int)
def ztest_cmd(x1, n1, x2, n2):
    """One-sided two-proportion z-test of p1 > p2."""
    result = evalkit.two_proportion_ztest(x1, n1, x2, n2)
    rows = [(f"{result.z:.4f}", f"{result.p_one_sided:.4f}", f"{result.pooled_proportion:.4f}")]
    _print_report(result.as_dict(), rows, ("z", "p_one_sided", "pooled"))


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--listen", "listen_address", default=None, help="host:port override.")
@click.option("--retrain-interval", "retrain_interval_seconds", type=int, default=None)
@click.option("--event-log", "event_log_path", type=click.Path(), default=None)
@click.option("--ui-dir", "ui_dir", type=click.Path(), default=None)
def serve(config_path, listen_address, retrain_interval_seconds, event_log_path, ui_dir):
    """Run the HTTP service."""
    config = service.load_config(
        config_path,
        overrides={
            "listen_address": listen_address,
            "retrain_interval_seconds": retrain_interval_seconds,
            "event_log_path": event_log_path,
            "ui_dir": ui_dir,
        },
    )
    if not config.corpus_paths:
        click.echo("no corpus_paths configured; nothing to serve", err=True)
        sys.exit(2)
    service.serve(config)


if __name__ == "__main__":
    main()
