#!/usr/bin/env python3
"""Run the full validation grid over a model store and print a summary table.

Sweeps the exact-visit target (4th..10th visit by default) with and without
the Markov fallback, under both 5-fold cross-validation and bootstrap, the
experiment layout used to validate the predictor. Point it at a store built
from the real msnbc file to reproduce the published-style numbers, or at a
synthetic store for a dry run.

Example:
    python scripts/run_eval_grid.py model.navstore --band 3,13 --seed 42
"""

import argparse
import sys
import time

from navpredict.evaluation import EvalTask, MODE_VISIT, bootstrap_validate, cross_validate
from navpredict.predictor import PredictorParams
from navpredict.store import load_store


def parse_band(text):
    lo, _, hi = text.partition(",")
    return int(lo), None if hi in ("", "inf") else int(hi)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("store")
    parser.add_argument("--visits", default="4,5,6,7,8,9,10",
                        help="comma-separated exact-visit targets")
    parser.add_argument("--band", default="3,13", help="length band, e.g. 3,13")
    parser.add_argument("--folds", type=int, default=5)
    parser.add_argument("--resamples", type=int, default=10)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--k", type=int, default=2)
    parser.add_argument("--threshold", type=float, default=0.2)
    parser.add_argument("--min-support", type=int, default=5)
    args = parser.parse_args()

    min_len, max_len = parse_band(args.band)
    params = PredictorParams(k=args.k, threshold=args.threshold, min_support=args.min_support)
    dataset = load_store(args.store).dataset
    print(f"store: {args.store} ({len(dataset.trajectories)} trajectories)")
    print(f"band: [{min_len}, {max_len or 'inf'}]  k={args.k} threshold={args.threshold} "
          f"min_support={args.min_support} seed={args.seed}")
    print(f"{'visit':>5} {'method':>9} {'kmm':>4} {'trials':>8} {'success':>8} "
          f"{'top3':>7} {'fallback':>9} {'avg_cluster':>12}")

    for visit in (int(v) for v in args.visits.split(",")):
        task = EvalTask(MODE_VISIT, visit=visit, min_len=min_len, max_len=max_len)
        for kmm in (False, True):
            started = time.monotonic()
            cv = cross_validate(dataset, args.folds, task, params, kmm, args.seed)
            bts = bootstrap_validate(dataset, args.resamples, task, params, kmm, args.seed)
            for label, r in (("cv", cv), ("bootstrap", bts)):
                print(f"{visit:>5} {label:>9} {'yes' if kmm else 'no':>4} {r.trials:>8} "
                      f"{r.success_rate:>8.4f} {r.topn_success[3]:>7.4f} "
                      f"{r.fallback_rate:>9.4f} {r.mean_cluster_size:>12.1f}")
            sys.stderr.write(f"  [visit {visit} kmm={kmm}: {time.monotonic() - started:.1f}s]\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
