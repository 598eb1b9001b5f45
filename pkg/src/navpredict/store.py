"""Single-file versioned model store.

Layout (UTF-8, LF line endings):

    line 1          ``navstore 1`` (format version)
    line 2          header JSON with canonical key order: catalog (list of
                    category names, ids implicit 1..C), created (ISO-8601),
                    filter ({min_len, max_len} or null), markov_k (int or
                    null), provenance, trajectories (count N)
    lines 3..N+2    one trajectory per line, space-separated page ids
    then, if markov_k is set, one JSON line per order j = 0..k mapping
    context ("" or space-joined page ids) to {next page: count}

Loading then saving reproduces the file byte for byte: the header is
re-emitted from the loaded fields and all JSON is written with sorted keys.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone

from .markov import MarkovModel, train_kmm
from .predictor import ModelBundle
from .prefix_index import build_prefix_index
from .sessions import SessionDataset, catalog_from_names

FORMAT_LINE = "navstore 1"


class StoreError(ValueError):
    """Unsupported version or structurally corrupt store file."""


@dataclass(frozen=True)
class StoredModel:
    dataset: SessionDataset
    markov: MarkovModel | None
    meta: dict  # created, filter, provenance

    def save(self, path: str) -> None:
        save_store(
            path,
            self.dataset,
            markov=self.markov,
            filter_bounds=self.meta.get("filter"),
            created=self.meta.get("created"),
        )


def _header(dataset: SessionDataset, markov, filter_bounds, created) -> dict:
    return {
        "catalog": [c.name for c in dataset.catalog],
        "created": created,
        "filter": filter_bounds,
        "markov_k": markov.k if markov is not None else None,
        "provenance": dataset.provenance,
        "trajectories": len(dataset.trajectories),
    }


def save_store(
    path: str,
    dataset: SessionDataset,
    *,
    markov: MarkovModel | None = None,
    filter_bounds: dict | None = None,
    created: str | None = None,
) -> None:
    if created is None:
        created = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    header = _header(dataset, markov, filter_bounds, created)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(FORMAT_LINE + "\n")
        fh.write(json.dumps(header, sort_keys=True, separators=(",", ":")) + "\n")
        for traj in dataset.trajectories:
            fh.write(" ".join(map(str, traj)) + "\n")
        if markov is not None:
            for j in range(markov.k + 1):
                table = {
                    " ".join(map(str, ctx)): {str(p): c for p, c in slot.items()}
                    for ctx, slot in markov.tables.get(j, {}).items()
                }
                fh.write(json.dumps(table, sort_keys=True, separators=(",", ":")) + "\n")


def load_store(path: str) -> StoredModel:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != FORMAT_LINE:
        found = lines[0] if lines else "<empty file>"
        raise StoreError(f"not a navstore file (expected {FORMAT_LINE!r}, found {found!r})")
    try:
        header = json.loads(lines[1])
        names = header["catalog"]
        n = header["trajectories"]
        markov_k = header["markov_k"]
    except (IndexError, KeyError, json.JSONDecodeError) as exc:
        raise StoreError(f"corrupt store header: {exc}") from None

    catalog = catalog_from_names(names)
    n_cats = len(catalog)
    body = lines[2:]
    if len(body) < n:
        raise StoreError(f"store truncated: expected {n} trajectories, found {len(body)}")
    trajectories = []
    for i in range(n):
        try:
            traj = tuple(int(t) for t in body[i].split())
        except ValueError:
            raise StoreError(f"corrupt trajectory on line {i + 3}") from None
        if not traj or max(traj) > n_cats or min(traj) < 1:
            raise StoreError(f"corrupt trajectory on line {i + 3}")
        trajectories.append(traj)

    markov = None
    if markov_k is not None:
        rows = body[n:]
        if len(rows) != markov_k + 1:
            raise StoreError(
                f"store truncated: expected {markov_k + 1} markov tables, found {len(rows)}"
            )
        tables: dict[int, dict[tuple[int, ...], dict[int, int]]] = {}
        for j, row in enumerate(rows):
            try:
                raw = json.loads(row)
                tables[j] = {
                    tuple(int(t) for t in ctx.split()): {int(p): c for p, c in slot.items()}
                    for ctx, slot in raw.items()
                }
            except (ValueError, AttributeError) as exc:
                raise StoreError(f"corrupt markov table for order {j}: {exc}") from None
        markov = MarkovModel(markov_k, tables, n)
    elif len(body) != n:
        raise StoreError(f"trailing data after {n} trajectories")

    dataset = SessionDataset(catalog, tuple(trajectories), header.get("provenance", ""))
    meta = {
        "created": header.get("created"),
        "filter": header.get("filter"),
        "provenance": header.get("provenance", ""),
    }
    return StoredModel(dataset, markov, meta)


def load_bundle(path: str, k: int | None = None, depth_cap: int = 32) -> tuple[ModelBundle, dict]:
    """Load a store into a ready-to-serve bundle.

    The embedded Markov model is reused when its order matches the request
    (or when ``k`` is None); otherwise the model is retrained in memory at
    the requested order.
    """
    stored = load_store(path)
    markov = stored.markov
    if markov is None or (k is not None and markov.k != k):
        markov = train_kmm(stored.dataset, k if k is not None else 2)
    bundle = ModelBundle(stored.dataset, build_prefix_index(stored.dataset, depth_cap), markov)
    return bundle, stored.meta
