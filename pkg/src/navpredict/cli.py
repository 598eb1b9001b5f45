"""Command-line interface: ingest, stats, predict, expand, dissim, evaluate, serve.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable input,
malformed .seq line, corrupt store).
"""

from __future__ import annotations

import json
import os
import socket
import sys

import click

from .dissimilarity import dissimilarity_row
from .evaluation import EvalReport, EvalTask, bootstrap_validate, cross_validate
from .predictor import PredictorParams, expand_whatif, predict_next
from .server import (
    create_app,
    parse_prefix_text,
    prediction_payload,
    stats_payload,
    tree_payload,
    ApiError,
)
from .sessions import (
    DatasetParseError,
    PageRangeError,
    filter_by_length,
    load_seq,
    percent_2dp,
    visit_length_histogram,
)
from .store import StoreError, load_bundle, load_store, save_store
from .markov import train_kmm


def _params_options(fn):
    fn = click.option("--k", type=int, default=2, show_default=True, help="Markov order.")(fn)
    fn = click.option("--threshold", type=float, default=0.2, show_default=True,
                      help="Minimum top probability for trusting the cluster.")(fn)
    fn = click.option("--min-support", type=int, default=5, show_default=True,
                      help="Minimum cluster observations for trusting the cluster.")(fn)
    fn = click.option("--top", "top_n", type=int, default=3, show_default=True,
                      help="Entries exposed per prediction.")(fn)
    return fn


def _build_params(k, threshold, min_support, top_n) -> PredictorParams:
    try:
        return PredictorParams(k=k, threshold=threshold, min_support=min_support, top_n=top_n)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


@click.group()
def cli():
    """Next-page prediction from clickstream session prefixes."""


@cli.command()
@click.argument("seq_path", type=click.Path())
@click.option("-o", "--output", "store_path", required=True, type=click.Path(),
              help="Model store file to write.")
@click.option("--min-len", type=int, default=1, show_default=True)
@click.option("--max-len", type=int, default=None, help="Unbounded when omitted.")
@click.option("--k", type=int, default=2, show_default=True,
              help="Markov order to train and embed in the store.")
def ingest(seq_path, store_path, min_len, max_len, k):
    """Parse a .seq file, filter by session length, write a model store."""
    if min_len < 1 or (max_len is not None and min_len > max_len):
        raise click.UsageError(f"bad length bounds [{min_len}, {max_len}]")
    if k < 0:
        raise click.UsageError(f"k must be >= 0, got {k}")
    ds = load_seq(seq_path, provenance=os.path.basename(seq_path))
    before = len(ds)
    filtered = filter_by_length(ds, min_len, max_len)
    after = len(filtered)
    hi = "inf" if max_len is None else str(max_len)
    click.echo(f"parsed {before} trajectories over {ds.n_categories} categories from {seq_path}")
    click.echo(f"{before} -> {after} after length filter [{min_len}, {hi}]")
    markov = train_kmm(filtered, k)
    save_store(
        store_path,
        filtered,
        markov=markov,
        filter_bounds={"min_len": min_len, "max_len": max_len},
    )
    click.echo(f"wrote store to {store_path} (markov order {k})")


@cli.command()
@click.argument("store_path", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def stats(store_path, as_json):
    """Session-length histogram of a model store."""
    stored = load_store(store_path)
    hist = visit_length_histogram(stored.dataset)
    if as_json:
        payload = {
            "total": hist.total,
            "provenance": stored.dataset.provenance,
            "rows": [
                {
                    "length": r.length,
                    "users": r.users,
                    "percent": percent_2dp(r.users, hist.total),
                    "fraction": r.fraction,
                }
                for r in hist.rows
            ],
        }
        click.echo(json.dumps(payload, sort_keys=True))
        return
    click.echo(f"{'length':>6}  {'users':>8}  {'percent':>7}")
    for r in hist.rows:
        click.echo(f"{r.length:>6}  {r.users:>8}  {percent_2dp(r.users, hist.total):>7.2f}")
    click.echo(f"{'total':>6}  {hist.total:>8}")


@cli.command()
@click.argument("store_path", type=click.Path())
@click.option("-p", "--prefix", "prefix_text", required=True,
              help="Comma-separated page ids, e.g. 1,3,4.")
@_params_options
@click.option("--json", "as_json", is_flag=True)
def predict(store_path, prefix_text, k, threshold, min_support, top_n, as_json):
    """Predict the next page for a navigation prefix."""
    params = _build_params(k, threshold, min_support, top_n)
    prefix = _parse_prefix(prefix_text)
    bundle, _ = load_bundle(store_path, k=params.k)
    try:
        prediction = predict_next(bundle, prefix, params)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    payload = prediction_payload(bundle, prediction)
    if as_json:
        click.echo(json.dumps(payload, sort_keys=True))
        return
    click.echo(f"prefix: {','.join(map(str, prediction.prefix))}")
    click.echo(f"source: {prediction.source}"
               + (f" (order {prediction.markov_order_used})"
                  if prediction.markov_order_used is not None else ""))
    click.echo(f"cluster_size: {prediction.cluster_size}"
               f"  contributing: {prediction.contributing_count}")
    click.echo(f"params: k={params.k} threshold={params.threshold}"
               f" min_support={params.min_support} top_n={params.top_n}")
    if prediction.distribution.is_empty:
        click.echo("no prediction available (empty distribution)")
        return
    click.echo(f"{'page':>4}  {'name':<12} {'p':>8}")
    for entry in payload["predictions"]:
        click.echo(f"{entry['page']:>4}  {entry['name']:<12} {entry['p']:>8.4f}")


@cli.command()
@click.argument("store_path", type=click.Path())
@click.option("-p", "--prefix", "prefix_text", required=True)
@click.option("--depth", type=int, default=1, show_default=True)
@_params_options
@click.option("--json", "as_json", is_flag=True)
def expand(store_path, prefix_text, depth, k, threshold, min_support, top_n, as_json):
    """Expand a what-if prediction tree under a prefix."""
    params = _build_params(k, threshold, min_support, top_n)
    if depth < 0:
        raise click.UsageError(f"depth must be >= 0, got {depth}")
    prefix = _parse_prefix(prefix_text)
    bundle, _ = load_bundle(store_path, k=params.k)
    try:
        tree = expand_whatif(bundle, prefix, depth, params)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if as_json:
        click.echo(json.dumps(tree_payload(bundle, tree), sort_keys=True))
        return

    def _show(node, indent):
        pred = node.prediction
        pages = " ".join(f"{p}:{prob:.2f}" for p, prob in pred.top_entries())
        click.echo(f"{'  ' * indent}{','.join(map(str, pred.prefix))}"
                   f" [{pred.source}] -> {pages or '(empty)'}")
        for child in node.children:
            _show(child, indent + 1)

    _show(tree, 0)


@cli.command()
@click.argument("store_path", type=click.Path())
@click.option("-p", "--prefix", "prefix_text", required=True)
@click.option("--limit", type=int, default=None, help="Print at most this many rows.")
def dissim(store_path, prefix_text, limit):
    """Export the dissimilarity row for a prefix as tab-separated text."""
    prefix = _parse_prefix(prefix_text)
    stored = load_store(store_path)
    row = dissimilarity_row(prefix, stored.dataset)
    click.echo("index\tdissimilarity")
    entries = row.entries if limit is None else row.entries[:limit]
    for idx, dis in entries:
        click.echo(f"{idx}\t{dis}")
    click.echo(f"# omitted_shorter_than_query: {row.omitted}")


@cli.command()
@click.argument("store_path", type=click.Path())
@click.option("--method", type=click.Choice(["cv", "bootstrap"]), default="cv",
              show_default=True)
@click.option("--folds", type=int, default=5, show_default=True)
@click.option("--resamples", type=int, default=200, show_default=True)
@click.option("--task", "task_text", default="next", show_default=True,
              help="'next' or 'visit:<v>'.")
@click.option("--min-len", type=int, default=1, show_default=True)
@click.option("--max-len", type=int, default=None)
@click.option("--kmm/--no-kmm", "kmm_enabled", default=True, show_default=True,
              help="Markov fallback on gate failure.")
@click.option("--seed", type=int, default=0, show_default=True)
@_params_options
@click.option("--json", "as_json", is_flag=True)
def evaluate(store_path, method, folds, resamples, task_text, min_len, max_len,
             kmm_enabled, seed, k, threshold, min_support, top_n, as_json):
    """Estimate prediction success by cross-validation or bootstrap."""
    params = _build_params(k, threshold, min_support, top_n)
    try:
        task = EvalTask.parse(task_text, min_len, max_len)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    stored = load_store(store_path)
    try:
        if method == "cv":
            report = cross_validate(stored.dataset, folds, task, params, kmm_enabled, seed)
        else:
            report = bootstrap_validate(stored.dataset, resamples, task, params, kmm_enabled, seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if as_json:
        click.echo(report.to_json())
        return
    _print_report(report)


def _print_report(report: EvalReport) -> None:
    t = report.task
    band_hi = "inf" if t.max_len is None else t.max_len
    click.echo(f"method: {report.method}  splits: {report.splits}  seed: {report.seed}")
    click.echo(f"task: {t.mode}" + (f" v={t.visit}" if t.visit else "")
               + f"  band: [{t.min_len}, {band_hi}]")
    p = report.params
    click.echo(f"params: k={p.k} threshold={p.threshold} min_support={p.min_support}"
               f" top_n={p.top_n}  kmm: {'enabled' if report.kmm_enabled else 'disabled'}")
    click.echo(f"dataset: {report.dataset_provenance or '(unnamed)'}"
               f"  admitted: {report.dataset_size}")
    top = report.topn_success
    click.echo(f"success_rate: {report.success_rate:.4f}"
               f"  (top2 {top[2]:.4f}, top3 {top[3]:.4f})  trials: {report.trials}")
    click.echo(f"fallback_rate: {report.fallback_rate:.4f}"
               f"  mean_cluster_size: {report.mean_cluster_size:.2f}"
               f"  distinct_clusters: {report.distinct_clusters}")
    if report.redraws:
        click.echo(f"redraws: {report.redraws}")
    for i, s in enumerate(report.per_split, start=1):
        click.echo(f"  split {i}: trials={s.trials} successes={s.successes}"
                   f" rate={s.success_rate:.4f} fallbacks={s.fallbacks}")


@cli.command()
@click.argument("store_path", type=click.Path())
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--static-dir", type=click.Path(), default=None,
              help="Directory of explorer UI assets to serve at /.")
@click.option("--k", type=int, default=2, show_default=True)
def serve(store_path, host, port, static_dir, k):
    """Serve the prediction API (and optionally the explorer UI)."""
    if not 1 <= port <= 65535:
        raise click.UsageError(f"port must be in [1, 65535], got {port}")
    bundle, meta = load_bundle(store_path, k=k)
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((host, port))
    except OSError as exc:
        raise OSError(f"cannot listen on {host}:{port}: {exc}") from None
    finally:
        probe.close()
    app = create_app(bundle, PredictorParams(k=k), static_dir=static_dir)
    click.echo(f"serving {store_path} ({len(bundle.dataset)} trajectories,"
               f" markov order {bundle.markov.k}) on http://{host}:{port}")
    import uvicorn

    uvicorn.run(app, host=host, port=port, log_level="warning")


def _parse_prefix(text: str) -> tuple[int, ...]:
    try:
        return parse_prefix_text(text)
    except ApiError as exc:
        raise click.UsageError(exc.message) from None


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except (DatasetParseError, PageRangeError, StoreError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
