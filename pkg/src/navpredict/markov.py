"""k-th order Markov model over page transitions, with context backoff.

Training fills one count table per order j in [0, k]: table j maps a
length-j context (the j pages preceding a transition) to the tally of pages
observed next. Table 0 therefore holds the global next-page frequencies
over every transition position. Prediction looks up the longest available
context and, unless ``strict``, backs off one page at a time down to the
empty context.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cluster import APDistribution, EMPTY_DISTRIBUTION, _distribution
from .sessions import SessionDataset


@dataclass(frozen=True)
class MarkovModel:
    k: int
    # order -> context tuple -> next page -> count
    tables: dict[int, dict[tuple[int, ...], dict[int, int]]]
    trained_on: int

    @property
    def is_empty(self) -> bool:
        return not self.tables.get(0)


def train_kmm(ds: SessionDataset, k: int) -> MarkovModel:
    """Count every transition of every trajectory at all orders 0..k.

    Purely additive, so the result is independent of trajectory order.
    """
    if k < 0:
        raise ValueError(f"order must be >= 0, got {k}")
    tables: dict[int, dict[tuple[int, ...], dict[int, int]]] = {j: {} for j in range(k + 1)}
    for traj in ds.trajectories:
        for t in range(len(traj) - 1):
            nxt = traj[t + 1]
            for j in range(min(k, t + 1) + 1):
                ctx = traj[t + 1 - j : t + 1]
                slot = tables[j].get(ctx)
                if slot is None:
                    slot = tables[j][ctx] = {}
                slot[nxt] = slot.get(nxt, 0) + 1
    return MarkovModel(k, tables, len(ds.trajectories))


def kmm_predict(
    model: MarkovModel,
    context: Sequence[int],
    *,
    max_order: int | None = None,
    strict: bool = False,
) -> tuple[APDistribution, int | None]:
    """Distribution of the next page given the tail of ``context``.

    Returns ``(distribution, order_used)``. The lookup starts at order
    ``min(model.k, len(context), max_order)`` and, unless ``strict``, backs
    off one page at a time; ``order_used`` is the first order with data, or
    None when nothing matched (empty model, or strict miss).
    """
    ctx = tuple(context)
    j = min(model.k, len(ctx))
    if max_order is not None:
        j = min(j, max_order)
    while j >= 0:
        key = ctx[len(ctx) - j :] if j else ()
        slot = model.tables.get(j, {}).get(key)
        if slot:
            return _distribution(slot), j
        if strict:
            break
        j -= 1
    return EMPTY_DISTRIBUTION, None
