"""Prediction-success estimation by k-fold cross-validation and bootstrap.

A task defines which trajectories are admitted (length band) and what one
trial looks like: either predict the v-th visit from the first v-1 pages
(``exact-visit``) or predict the final page from everything before it
(``next-after-prefix``). Success is a top-1 exact match of the untruncated
prediction; with the Markov fallback disabled, trials whose cluster
distribution fails the confidence gate count as failures.

All randomness is derived from string seeds, and per-fold / per-resample
streams depend only on (seed, index), so results are bit-identical across
runs regardless of execution order.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

from .cluster import cluster_ap
from .markov import kmm_predict, train_kmm
from .prefix_index import build_prefix_index
from .predictor import PredictorParams
from .sessions import SessionDataset, Trajectory

MODE_NEXT = "next-after-prefix"
MODE_VISIT = "exact-visit"


@dataclass(frozen=True)
class EvalTask:
    mode: str = MODE_NEXT
    visit: int | None = None
    min_len: int = 1
    max_len: int | None = None

    def __post_init__(self):
        if self.mode not in (MODE_NEXT, MODE_VISIT):
            raise ValueError(f"unknown task mode {self.mode!r}")
        if self.mode == MODE_VISIT:
            if self.visit is None or self.visit < 2:
                raise ValueError("exact-visit requires a target visit >= 2")
        elif self.visit is not None:
            raise ValueError("next-after-prefix takes no target visit")
        if self.min_len < 1:
            raise ValueError(f"min_len must be >= 1, got {self.min_len}")
        if self.max_len is not None and self.min_len > self.max_len:
            raise ValueError(f"min_len {self.min_len} exceeds max_len {self.max_len}")

    @classmethod
    def parse(cls, spec: str, min_len: int = 1, max_len: int | None = None) -> "EvalTask":
        """``"next"`` or ``"visit:<v>"``."""
        spec = spec.strip()
        if spec == "next":
            return cls(MODE_NEXT, None, min_len, max_len)
        if spec.startswith("visit:"):
            try:
                v = int(spec.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad task spec {spec!r}") from None
            return cls(MODE_VISIT, v, min_len, max_len)
        raise ValueError(f"bad task spec {spec!r}: expected 'next' or 'visit:<v>'")

    def admits(self, traj: Trajectory) -> bool:
        n = len(traj)
        if n < self.min_len or (self.max_len is not None and n > self.max_len):
            return False
        return n >= (self.visit if self.mode == MODE_VISIT else 2)

    def trial(self, traj: Trajectory) -> tuple[Trajectory, int]:
        """(prefix, true next page) for one admitted trajectory."""
        if self.mode == MODE_VISIT:
            v = self.visit
            return traj[: v - 1], traj[v - 1]
        return traj[:-1], traj[-1]

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "visit": self.visit,
            "min_len": self.min_len,
            "max_len": self.max_len,
        }


@dataclass(frozen=True)
class SplitResult:
    trials: int
    successes: int
    top2: int
    top3: int
    fallbacks: int  # trials where the cluster gate failed
    cluster_size_sum: int
    distinct_clusters: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0


@dataclass(frozen=True)
class EvalReport:
    method: str  # "cv" or "bootstrap"
    splits: int  # folds or resamples
    seed: int
    params: PredictorParams
    kmm_enabled: bool
    task: EvalTask
    dataset_provenance: str
    dataset_size: int  # after the task's length-band filter
    success_rate: float
    trials: int
    successes: int
    topn_success: dict[int, float]  # n in {1, 2, 3}
    fallback_rate: float
    mean_cluster_size: float
    distinct_clusters: int
    per_split: tuple[SplitResult, ...]
    redraws: int = 0  # bootstrap resamples redrawn for an empty out-of-bag set

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "splits": self.splits,
            "seed": self.seed,
            "params": self.params.as_dict(),
            "kmm_enabled": self.kmm_enabled,
            "task": self.task.as_dict(),
            "dataset": {
                "provenance": self.dataset_provenance,
                "size_after_filter": self.dataset_size,
            },
            "success_rate": self.success_rate,
            "trials": self.trials,
            "successes": self.successes,
            "topn_success": {str(n): r for n, r in sorted(self.topn_success.items())},
            "fallback_rate": self.fallback_rate,
            "mean_cluster_size": self.mean_cluster_size,
            "distinct_clusters": self.distinct_clusters,
            "redraws": self.redraws,
            "per_split": [
                {
                    "trials": s.trials,
                    "successes": s.successes,
                    "success_rate": s.success_rate,
                    "top2": s.top2,
                    "top3": s.top3,
                    "fallbacks": s.fallbacks,
                    "mean_cluster_size": s.cluster_size_sum / s.trials if s.trials else 0.0,
                    "distinct_clusters": s.distinct_clusters,
                }
                for s in self.per_split
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))


def fold_assignments(n: int, folds: int, seed: int) -> list[list[int]]:
    """Seeded shuffle, then contiguous folds with sizes differing by <= 1."""
    order = list(range(n))
    random.Random(f"{seed}:shuffle").shuffle(order)
    base, extra = divmod(n, folds)
    out = []
    start = 0
    for i in range(folds):
        size = base + (1 if i < extra else 0)
        out.append(order[start : start + size])
        start += size
    return out


def bootstrap_draw(n: int, seed: int, resample: int, *, max_attempts: int = 1000) -> tuple[list[int], list[int], int]:
    """One with-replacement draw of size n and its out-of-bag complement.

    Redraws (counting them) until the out-of-bag set is non-empty.
    """
    rng = random.Random(f"{seed}:resample:{resample}")
    redraws = 0
    for _ in range(max_attempts):
        drawn = [rng.randrange(n) for _ in range(n)]
        in_bag = set(drawn)
        oob = [i for i in range(n) if i not in in_bag]
        if oob:
            return drawn, oob, redraws
        redraws += 1
    raise ValueError(f"could not draw a non-empty out-of-bag set in {max_attempts} attempts")


def run_trials(
    train_ds: SessionDataset,
    test_trajs: Sequence[Trajectory],
    task: EvalTask,
    params: PredictorParams,
    kmm_enabled: bool,
    depth_cap: int = 32,
) -> SplitResult:
    """Evaluate one train/test split. Pure: no RNG, no shared state."""
    index = build_prefix_index(train_ds, depth_cap)
    markov = train_kmm(train_ds, params.k) if kmm_enabled else None
    trials = successes = top2 = top3 = fallbacks = 0
    cluster_size_sum = 0
    seen_clusters: set[Trajectory] = set()
    for traj in test_trajs:
        prefix, truth = task.trial(traj)
        dist, cluster_size, _ = cluster_ap(index, prefix)
        trials += 1
        cluster_size_sum += cluster_size
        if cluster_size:
            seen_clusters.add(prefix)
        gate = (
            not dist.is_empty
            and dist.support >= params.min_support
            and dist.max_prob >= params.threshold
        )
        if not gate:
            fallbacks += 1
            if not kmm_enabled:
                continue  # counted as a failure
            dist, _ = kmm_predict(markov, prefix, max_order=params.k)
            if dist.is_empty:
                continue
        ranked = dist.entries()
        if ranked[0][0] == truth:
            successes += 1
        hit_at = next((i for i, (page, _) in enumerate(ranked[:3]) if page == truth), None)
        if hit_at is not None:
            if hit_at < 2:
                top2 += 1
            top3 += 1
    return SplitResult(trials, successes, top2, top3, fallbacks, cluster_size_sum, len(seen_clusters))


def _admitted(ds: SessionDataset, task: EvalTask) -> list[Trajectory]:
    return [t for t in ds.trajectories if task.admits(t)]


def _assemble(
    method: str,
    splits: Sequence[SplitResult],
    headline: float,
    ds: SessionDataset,
    n_filtered: int,
    task: EvalTask,
    params: PredictorParams,
    kmm_enabled: bool,
    seed: int,
    redraws: int = 0,
) -> EvalReport:
    trials = sum(s.trials for s in splits)
    successes = sum(s.successes for s in splits)
    return EvalReport(
        method=method,
        splits=len(splits),
        seed=seed,
        params=params,
        kmm_enabled=kmm_enabled,
        task=task,
        dataset_provenance=ds.provenance,
        dataset_size=n_filtered,
        success_rate=headline,
        trials=trials,
        successes=successes,
        topn_success={
            1: successes / trials if trials else 0.0,
            2: sum(s.top2 for s in splits) / trials if trials else 0.0,
            3: sum(s.top3 for s in splits) / trials if trials else 0.0,
        },
        fallback_rate=sum(s.fallbacks for s in splits) / trials if trials else 0.0,
        mean_cluster_size=sum(s.cluster_size_sum for s in splits) / trials if trials else 0.0,
        distinct_clusters=sum(s.distinct_clusters for s in splits),
        per_split=tuple(splits),
        redraws=redraws,
    )


def cross_validate(
    ds: SessionDataset,
    folds: int,
    task: EvalTask,
    params: PredictorParams,
    kmm_enabled: bool = True,
    seed: int = 0,
) -> EvalReport:
    """k-fold CV over the task-admitted trajectories.

    The headline success rate is total successes over total trials, i.e. the
    per-fold rates weighted by test size.
    """
    if folds < 2:
        raise ValueError(f"folds must be >= 2, got {folds}")
    admitted = _admitted(ds, task)
    n = len(admitted)
    if folds > n:
        raise ValueError(f"{folds} folds exceed the {n} admitted trajectories")
    assignments = fold_assignments(n, folds, seed)
    fold_of = [0] * n
    for fi, idxs in enumerate(assignments):
        for i in idxs:
            fold_of[i] = fi
    results = []
    for fi, test_idx in enumerate(assignments):
        train = tuple(admitted[i] for i in range(n) if fold_of[i] != fi)
        train_ds = SessionDataset(ds.catalog, train, ds.provenance)
        test = [admitted[i] for i in test_idx]
        results.append(run_trials(train_ds, test, task, params, kmm_enabled))
    trials = sum(s.trials for s in results)
    headline = sum(s.successes for s in results) / trials if trials else 0.0
    return _assemble("cv", results, headline, ds, n, task, params, kmm_enabled, seed)


def bootstrap_validate(
    ds: SessionDataset,
    resamples: int,
    task: EvalTask,
    params: PredictorParams,
    kmm_enabled: bool = True,
    seed: int = 0,
) -> EvalReport:
    """Bootstrap: train on an n-sized draw with replacement, test out-of-bag.

    The headline success rate is the unweighted mean of the per-resample
    rates (each resample counts once, whatever its out-of-bag size).
    """
    if resamples < 1:
        raise ValueError(f"resamples must be >= 1, got {resamples}")
    admitted = _admitted(ds, task)
    n = len(admitted)
    if n < 2:
        raise ValueError("need at least 2 admitted trajectories to bootstrap")
    results = []
    redraws_total = 0
    for r in range(resamples):
        drawn, oob, redraws = bootstrap_draw(n, seed, r)
        redraws_total += redraws
        train_ds = SessionDataset(ds.catalog, tuple(admitted[i] for i in drawn), ds.provenance)
        test = [admitted[i] for i in oob]
        results.append(run_trials(train_ds, test, task, params, kmm_enabled))
    headline = sum(s.success_rate for s in results) / len(results)
    return _assemble(
        "bootstrap", results, headline, ds, n, task, params, kmm_enabled, seed, redraws_total
    )
