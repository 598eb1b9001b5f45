"""Hybrid next-page predictor: cluster probabilities first, Markov fallback.

The cluster distribution is used whenever it clears the confidence gate
(non-empty, support >= min_support, top probability >= threshold);
otherwise the k-th order Markov model takes over, conditioned on the tail
of the user's actual prefix. What-if trees recursively extend the prefix by
each of the top-n predicted pages.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cluster import APDistribution, cluster_ap
from .markov import MarkovModel, kmm_predict, train_kmm
from .prefix_index import PrefixIndex, build_prefix_index
from .sessions import SessionDataset, Trajectory

SOURCE_CLUSTER = "cluster"
SOURCE_FALLBACK = "markov-fallback"


@dataclass(frozen=True)
class PredictorParams:
    k: int = 2
    threshold: float = 0.2
    min_support: int = 5
    top_n: int = 3

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.min_support < 0:
            raise ValueError(f"min_support must be >= 0, got {self.min_support}")
        if self.top_n < 1:
            raise ValueError(f"top_n must be >= 1, got {self.top_n}")

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "threshold": self.threshold,
            "min_support": self.min_support,
            "top_n": self.top_n,
        }


@dataclass(frozen=True)
class Prediction:
    prefix: Trajectory
    distribution: APDistribution  # full, untruncated
    source: str  # SOURCE_CLUSTER or SOURCE_FALLBACK
    cluster_size: int
    contributing_count: int
    markov_order_used: int | None
    params: PredictorParams

    def top_entries(self) -> list[tuple[int, float]]:
        """Transport view: at most top_n entries, best first."""
        return self.distribution.top(self.params.top_n)

    def argmax(self) -> int | None:
        return self.distribution.argmax()


@dataclass(frozen=True)
class PredictionTree:
    prediction: Prediction
    children: tuple["PredictionTree", ...]

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)


@dataclass(frozen=True)
class ModelBundle:
    """Everything the predictor needs, immutable and shareable across threads."""

    dataset: SessionDataset
    index: PrefixIndex
    markov: MarkovModel

    @classmethod
    def build(cls, dataset: SessionDataset, k: int = 2, depth_cap: int = 32) -> "ModelBundle":
        return cls(dataset, build_prefix_index(dataset, depth_cap), train_kmm(dataset, k))


def _check_prefix(bundle: ModelBundle, prefix: Sequence[int]) -> Trajectory:
    p = tuple(prefix)
    if not p:
        raise ValueError("prefix must be non-empty")
    n_cats = bundle.dataset.n_categories
    for page in p:
        if not 1 <= page <= n_cats:
            raise ValueError(f"page id {page} is not in the catalog (1..{n_cats})")
    return p


def predict_next(bundle: ModelBundle, prefix: Sequence[int], params: PredictorParams) -> Prediction:
    """Cluster distribution when confident enough, else Markov fallback."""
    p = _check_prefix(bundle, prefix)
    dist, cluster_size, contributing = cluster_ap(bundle.index, p)
    if not dist.is_empty and dist.support >= params.min_support and dist.max_prob >= params.threshold:
        return Prediction(p, dist, SOURCE_CLUSTER, cluster_size, contributing, None, params)
    # The fallback conditions on the user's actual last pages, not on the
    # cluster remnant.
    mdist, order = kmm_predict(bundle.markov, p, max_order=params.k)
    return Prediction(p, mdist, SOURCE_FALLBACK, cluster_size, contributing, order, params)


def expand_whatif(
    bundle: ModelBundle, prefix: Sequence[int], depth: int, params: PredictorParams
) -> PredictionTree:
    """What-if tree: each top-n predicted page becomes the next prefix step."""
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    prediction = predict_next(bundle, prefix, params)
    children: list[PredictionTree] = []
    if depth > 0:
        for page, _ in prediction.top_entries():
            children.append(expand_whatif(bundle, (*prediction.prefix, page), depth - 1, params))
    return PredictionTree(prediction, tuple(children))
