"""Root-anchored prefix count tree over a session dataset.

Each node corresponds to one page-id prefix and records the trajectories
passing through it (in dataset order), how many end exactly there, and, at
the depth cap, how many continue beyond it. Looking up a prefix returns
exactly the trajectory indices a linear scan with zero prefix-mismatch
dissimilarity would return, including prefixes deeper than the cap (served
by scanning the capped node's members).
"""

from __future__ import annotations

from typing import Sequence

from .sessions import SessionDataset


class PrefixNode:
    __slots__ = ("children", "members", "end_here", "truncated")

    def __init__(self):
        self.children: dict[int, PrefixNode] = {}
        self.members: list[int] = []
        self.end_here = 0
        self.truncated = 0

    @property
    def pass_through(self) -> int:
        return len(self.members)


class PrefixIndex:
    def __init__(self, dataset: SessionDataset, depth_cap: int = 32):
        if depth_cap < 1:
            raise ValueError(f"depth_cap must be >= 1, got {depth_cap}")
        self.dataset = dataset
        self.depth_cap = depth_cap
        self.root = PrefixNode()
        for idx, traj in enumerate(dataset.trajectories):
            node = self.root
            for depth, page in enumerate(traj):
                if depth == depth_cap:
                    node.truncated += 1
                    break
                child = node.children.get(page)
                if child is None:
                    child = node.children[page] = PrefixNode()
                child.members.append(idx)
                node = child
            else:
                node.end_here += 1

    def node(self, prefix: Sequence[int]) -> PrefixNode | None:
        """Node for ``prefix``, or None; only meaningful up to the depth cap."""
        node = self.root
        for page in prefix[: self.depth_cap]:
            node = node.children.get(page)
            if node is None:
                return None
        return node

    def lookup(self, prefix: Sequence[int]) -> list[int]:
        """Indices of trajectories whose first ``len(prefix)`` pages equal it."""
        m = len(prefix)
        if m == 0:
            return list(range(len(self.dataset.trajectories)))
        node = self.node(prefix)
        if node is None:
            return []
        if m <= self.depth_cap:
            return list(node.members)
        # Beyond the cap the tree is cut off; finish with a member scan.
        want = tuple(prefix)
        trajs = self.dataset.trajectories
        return [i for i in node.members if trajs[i][:m] == want]


def build_prefix_index(ds: SessionDataset, depth_cap: int = 32) -> PrefixIndex:
    return PrefixIndex(ds, depth_cap)
