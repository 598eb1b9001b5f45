"""Clickstream session datasets: parsing, length filtering, and visit statistics.

The on-disk input is the ``.seq`` convention: lines starting with ``%`` are
comments, an optional header line carries whitespace-separated category
names, and every other non-blank line is one user session as whitespace
separated 1-based page-category ids. Files without a header are assumed to
use the standard 17-category msnbc.com catalog.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import IO, Iterable

Trajectory = tuple[int, ...]

# Category catalog of the msnbc.com page-view data, used when a .seq file
# carries no header line of its own.
MSNBC_CATEGORIES = (
    "frontpage", "news", "tech", "local", "opinion", "on-air", "misc",
    "weather", "health", "living", "business", "sports", "summary", "bbs",
    "travel", "msn-news", "msn-sports",
)


class DatasetParseError(ValueError):
    """A data line held a token that is not a positive integer."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class PageRangeError(ValueError):
    """A data line referenced a page id outside the catalog."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class PageCategory:
    id: int
    name: str


@dataclass(frozen=True)
class SessionDataset:
    """An immutable catalog plus one trajectory per user session."""

    catalog: tuple[PageCategory, ...]
    trajectories: tuple[Trajectory, ...]
    provenance: str = ""

    def __len__(self) -> int:
        return len(self.trajectories)

    @property
    def n_categories(self) -> int:
        return len(self.catalog)

    def category_name(self, page_id: int) -> str:
        return self.catalog[page_id - 1].name


def catalog_from_names(names: Iterable[str]) -> tuple[PageCategory, ...]:
    cats = tuple(PageCategory(i, name) for i, name in enumerate(names, start=1))
    if any(not c.name for c in cats):
        raise ValueError("category names must be non-empty")
    return cats


def _is_int_literal(token: str) -> bool:
    body = token[1:] if token[:1] in "+-" else token
    return body.isdigit()


def parse_dataset(source: IO[bytes] | IO[str] | bytes | str, *, provenance: str = "") -> SessionDataset:
    """Parse a ``.seq`` stream into a :class:`SessionDataset`.

    ``source`` may be a byte/text stream or the raw content itself. Comment
    (``%``) and blank lines are skipped wherever they appear; the first
    remaining line is taken as the category header iff it holds any
    non-integer token, otherwise the msnbc catalog is assumed.
    """
    data = source.read() if hasattr(source, "read") else source
    if isinstance(data, bytes):
        data = data.decode("utf-8")

    catalog: tuple[PageCategory, ...] | None = None
    trajectories: list[Trajectory] = []
    for line_no, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if catalog is None:
            if not all(_is_int_literal(t) for t in tokens):
                catalog = catalog_from_names(tokens)
                continue
            catalog = catalog_from_names(MSNBC_CATEGORIES)
        n_cats = len(catalog)
        try:
            ids = [int(t) for t in tokens]
        except ValueError:
            bad = next(t for t in tokens if not _is_int_literal(t))
            raise DatasetParseError(line_no, f"token {bad!r} is not a positive integer") from None
        for page in ids:
            if page < 1:
                raise DatasetParseError(line_no, f"token {page!r} is not a positive integer")
            if page > n_cats:
                raise PageRangeError(line_no, f"page id {page} exceeds catalog size {n_cats}")
        trajectories.append(tuple(ids))

    if catalog is None:
        catalog = catalog_from_names(MSNBC_CATEGORIES)
    return SessionDataset(catalog, tuple(trajectories), provenance)


def load_seq(path: str, *, provenance: str | None = None) -> SessionDataset:
    with open(path, "rb") as fh:
        return parse_dataset(fh, provenance=path if provenance is None else provenance)


def filter_by_length(ds: SessionDataset, min_len: int = 1, max_len: int | None = None) -> SessionDataset:
    """Keep exactly the trajectories with ``min_len <= length <= max_len``.

    ``max_len=None`` means unbounded. The catalog is unchanged.
    """
    if min_len < 1:
        raise ValueError(f"min_len must be >= 1, got {min_len}")
    if max_len is not None and min_len > max_len:
        raise ValueError(f"min_len {min_len} exceeds max_len {max_len}")
    hi = float("inf") if max_len is None else max_len
    kept = tuple(t for t in ds.trajectories if min_len <= len(t) <= hi)
    return replace(ds, trajectories=kept)


@dataclass(frozen=True)
class HistogramRow:
    length: int
    users: int
    fraction: float  # users / total, full precision


@dataclass(frozen=True)
class LengthHistogram:
    rows: tuple[HistogramRow, ...]
    total: int


def visit_length_histogram(ds: SessionDataset) -> LengthHistogram:
    """One row per occurring session length, ascending."""
    counts = Counter(len(t) for t in ds.trajectories)
    total = len(ds.trajectories)
    rows = tuple(
        HistogramRow(length, users, users / total)
        for length, users in sorted(counts.items())
    )
    return LengthHistogram(rows, total)


def percent_2dp(users: int, total: int) -> float:
    """Exact half-up rounding of ``100 * users / total`` to two decimals.

    Computed in integer arithmetic so display values never inherit binary
    float rounding (e.g. 601384 of 989818 must print as 60.76).
    """
    if total == 0:
        return 0.0
    q, r = divmod(users * 10000, total)
    if 2 * r >= total:
        q += 1
    return q / 100
