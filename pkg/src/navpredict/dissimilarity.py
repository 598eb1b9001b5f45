"""Prefix-mismatch dissimilarity between trajectories.

The measure compares only the first ``m`` symbols, where ``m`` is the query
length; candidates shorter than the query are rejected and must be filtered
out by callers (``dissimilarity_row`` does so and reports how many it
dropped).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .sessions import SessionDataset, Trajectory


def dissimilarity(query: Sequence[int], candidate: Sequence[int]) -> int:
    """Count of positions in ``[0, len(query))`` where the two differ."""
    m = len(query)
    if len(candidate) < m:
        raise ValueError(
            f"candidate length {len(candidate)} is shorter than query length {m}"
        )
    return sum(1 for a, b in zip(query, candidate) if a != b)


@dataclass(frozen=True)
class DissimilarityRow:
    query: Trajectory
    entries: tuple[tuple[int, int], ...]  # (trajectory index, dissimilarity)
    omitted: int  # trajectories shorter than the query


def dissimilarity_row(query: Sequence[int], ds: SessionDataset) -> DissimilarityRow:
    """Dissimilarity of every dataset trajectory of length >= len(query)."""
    q = tuple(query)
    m = len(q)
    entries = []
    omitted = 0
    for idx, traj in enumerate(ds.trajectories):
        if len(traj) < m:
            omitted += 1
            continue
        entries.append((idx, dissimilarity(q, traj)))
    return DissimilarityRow(q, tuple(entries), omitted)
