import os
import random

import pytest

from navpredict.sessions import SessionDataset, catalog_from_names, parse_dataset

# Real msnbc.com clickstream file (not redistributable here); point
# MSNBC_SEQ at a local copy to enable the dataset-bound acceptance tests.
MSNBC_ENV = "MSNBC_SEQ"
MSNBC_DEFAULT = os.path.join(os.path.dirname(__file__), "..", "data", "msnbc990928.seq")


def make_dataset(trajs, n_categories=None, provenance="test") -> SessionDataset:
    if n_categories is None:
        n_categories = max((p for t in trajs for p in t), default=1)
    catalog = catalog_from_names([f"cat{i:02d}" for i in range(1, n_categories + 1)])
    return SessionDataset(catalog, tuple(tuple(t) for t in trajs), provenance)


@pytest.fixture
def table1_dataset():
    # The worked five-trajectory example: A..E at indices 0..4.
    return make_dataset(
        [
            (1, 2, 3, 4, 5),
            (1, 2, 3, 5, 6),
            (2, 3, 4),
            (6, 7, 8, 9, 10),
            (12, 13, 14, 15, 16),
        ],
        n_categories=16,
    )


@pytest.fixture
def table2_dataset():
    # Ten trajectories sharing the prefix (1, 3); their next pages are the
    # worked ten-observation sample 2,1,4,3,5,6,1,2,2,7.
    nexts = [2, 1, 4, 3, 5, 6, 1, 2, 2, 7]
    return make_dataset([(1, 3, nxt) for nxt in nexts], n_categories=8)


@pytest.fixture
def hand_corpus():
    return make_dataset([(1, 2, 3), (1, 2, 4), (1, 2, 3)], n_categories=8)


def synthetic_clickstream(n=400, n_pages=8, seed=7, min_len=3, max_len=10) -> SessionDataset:
    """Sessions from a planted first-order chain, so prediction is learnable."""
    rng = random.Random(seed)
    trajs = []
    for _ in range(n):
        length = rng.randint(min_len, max_len)
        page = rng.randint(1, n_pages)
        traj = [page]
        for _ in range(length - 1):
            if rng.random() < 0.7:
                page = page % n_pages + 1
            else:
                page = rng.randint(1, n_pages)
            traj.append(page)
        trajs.append(tuple(traj))
    return make_dataset(trajs, n_categories=n_pages, provenance=f"synthetic(seed={seed})")


@pytest.fixture(scope="session")
def synthetic_dataset():
    return synthetic_clickstream()


def msnbc_seq_path() -> str | None:
    path = os.environ.get(MSNBC_ENV, MSNBC_DEFAULT)
    return path if os.path.exists(path) else None


requires_msnbc = pytest.mark.skipif(
    msnbc_seq_path() is None,
    reason=f"msnbc .seq file not found; set {MSNBC_ENV} or place it at data/msnbc990928.seq",
)


@pytest.fixture(scope="session")
def msnbc_dataset():
    path = msnbc_seq_path()
    if path is None:
        pytest.skip(f"msnbc .seq file not found; set {MSNBC_ENV}")
    with open(path, "rb") as fh:
        return parse_dataset(fh, provenance=os.path.basename(path))
