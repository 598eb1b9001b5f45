"""Exact-prefix trajectory clusters and their next-page probabilities.

A cluster for a query prefix holds every stored trajectory whose first
``m`` pages equal the prefix (zero dissimilarity, length >= m). Members of
exactly the query length stay in the cluster but contribute nothing to the
next-page distribution, which they lack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .prefix_index import PrefixIndex
from .sessions import SessionDataset, Trajectory


@dataclass(frozen=True)
class APDistribution:
    """Next-page tallies normalized to probabilities.

    ``counts`` maps page id to an integer tally and ``support`` is the total
    number of observations, so every probability is an exact rational
    count/support before float conversion.
    """

    counts: dict[int, int]
    support: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.support:
            raise ValueError("support must equal the sum of counts")
        if any(c <= 0 for c in self.counts.values()):
            raise ValueError("counts must be strictly positive")

    @property
    def is_empty(self) -> bool:
        return self.support == 0

    def probability(self, page: int) -> float:
        return self.counts.get(page, 0) / self.support if self.support else 0.0

    @property
    def probabilities(self) -> dict[int, float]:
        return {page: count / self.support for page, count in self.counts.items()}

    def entries(self) -> list[tuple[int, float]]:
        """(page, probability) sorted by descending probability, ties by page id."""
        ranked = sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return [(page, count / self.support) for page, count in ranked]

    def top(self, n: int) -> list[tuple[int, float]]:
        return self.entries()[:n]

    def argmax(self) -> int | None:
        if not self.counts:
            return None
        return min(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]

    @property
    def max_prob(self) -> float:
        return max(self.counts.values()) / self.support if self.counts else 0.0


EMPTY_DISTRIBUTION = APDistribution({}, 0)


@dataclass(frozen=True)
class Cluster:
    query: Trajectory
    member_indices: tuple[int, ...]
    contributing_count: int  # members with length >= len(query) + 1

    @property
    def size(self) -> int:
        return len(self.member_indices)


def specific_cluster(query: Sequence[int], index: PrefixIndex) -> Cluster:
    """All trajectories whose first ``len(query)`` pages equal the query."""
    q = tuple(query)
    if not q:
        raise ValueError("query must be non-empty")
    members = index.lookup(q)
    m = len(q)
    trajs = index.dataset.trajectories
    contributing = sum(1 for i in members if len(trajs[i]) > m)
    return Cluster(q, tuple(members), contributing)


def associated_probabilities(cluster: Cluster, ds: SessionDataset) -> APDistribution:
    """Tally the page each contributing member visits right after the query."""
    m = len(cluster.query)
    counts: dict[int, int] = {}
    for i in cluster.member_indices:
        traj = ds.trajectories[i]
        if len(traj) > m:
            nxt = traj[m]
            counts[nxt] = counts.get(nxt, 0) + 1
    return _distribution(counts)


def cluster_ap(index: PrefixIndex, prefix: Sequence[int]) -> tuple[APDistribution, int, int]:
    """Fast path for the predictor: (distribution, cluster size, contributing).

    Above the depth cap the child pass-through counts are exactly the
    next-page tallies, so no member scan is needed; at or beyond the cap it
    falls back to scanning. Equivalent to ``associated_probabilities`` over
    ``specific_cluster`` by construction (and by test).
    """
    m = len(prefix)
    node = index.node(prefix)
    if node is None:
        return EMPTY_DISTRIBUTION, 0, 0
    if m < index.depth_cap:
        counts = {page: len(child.members) for page, child in sorted(node.children.items())}
        support = sum(counts.values())
        size = len(node.members) if m else len(index.dataset.trajectories)
        return _distribution(counts), size, support
    members = index.lookup(prefix)
    counts = {}
    for i in members:
        traj = index.dataset.trajectories[i]
        if len(traj) > m:
            nxt = traj[m]
            counts[nxt] = counts.get(nxt, 0) + 1
    return _distribution(counts), len(members), sum(counts.values())


def _distribution(counts: dict[int, int]) -> APDistribution:
    ordered = {page: counts[page] for page in sorted(counts)}
    return APDistribution(ordered, sum(ordered.values()))
