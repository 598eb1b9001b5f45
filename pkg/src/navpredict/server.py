"""HTTP API over an immutable model bundle.

All endpoints live under /api/v1 and are read-only; the bundle is loaded
once and shared by every request. Evaluation runs are serialized through a
lock so they queue rather than interleave.
"""

from __future__ import annotations

import threading
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .evaluation import EvalTask, bootstrap_validate, cross_validate
from .predictor import ModelBundle, Prediction, PredictorParams, expand_whatif, predict_next
from .sessions import percent_2dp, visit_length_histogram


class ApiError(Exception):
    def __init__(self, message: str, status: int = 400):
        self.message = message
        self.status = status


def parse_prefix_text(text: str) -> tuple[int, ...]:
    """Comma-separated 1-based ids, e.g. ``1,3,4``."""
    if not text or not text.strip():
        raise ApiError("prefix must name at least one page id")
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise ApiError(f"prefix {text!r} is not a comma-separated list of page ids") from None


def stats_payload(bundle: ModelBundle) -> dict:
    hist = visit_length_histogram(bundle.dataset)
    return {
        "total": hist.total,
        "provenance": bundle.dataset.provenance,
        "rows": [
            {
                "length": row.length,
                "users": row.users,
                "percent": percent_2dp(row.users, hist.total),
                "fraction": row.fraction,
            }
            for row in hist.rows
        ],
    }


def prediction_payload(bundle: ModelBundle, prediction: Prediction) -> dict:
    return {
        "prefix": list(prediction.prefix),
        "predictions": [
            {
                "page": page,
                "name": bundle.dataset.category_name(page),
                "p": p,
                "count": prediction.distribution.counts[page],
            }
            for page, p in prediction.top_entries()
        ],
        "source": prediction.source,
        "cluster_size": prediction.cluster_size,
        "contributing_count": prediction.contributing_count,
        "support": prediction.distribution.support,
        "markov_order_used": prediction.markov_order_used,
        "params": prediction.params.as_dict(),
    }


def tree_payload(bundle: ModelBundle, tree) -> dict:
    node = prediction_payload(bundle, tree.prediction)
    node["children"] = [tree_payload(bundle, child) for child in tree.children]
    return node


def _merge_params(defaults: PredictorParams, k, threshold, min_support, top) -> PredictorParams:
    try:
        return PredictorParams(
            k=defaults.k if k is None else int(k),
            threshold=defaults.threshold if threshold is None else float(threshold),
            min_support=defaults.min_support if min_support is None else int(min_support),
            top_n=defaults.top_n if top is None else int(top),
        )
    except ValueError as exc:
        raise ApiError(str(exc)) from None


class EvaluateRequest(BaseModel):
    method: str = "cv"
    task: str = "next"
    folds: int = 5
    resamples: int = 200
    min_len: int = 1
    max_len: Optional[int] = None
    kmm_enabled: bool = True
    seed: int = 0
    k: Optional[int] = None
    threshold: Optional[float] = None
    min_support: Optional[int] = None
    top_n: Optional[int] = None


def create_app(
    bundle: ModelBundle,
    default_params: PredictorParams | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    defaults = default_params or PredictorParams()
    app = FastAPI(title="navpredict", docs_url=None, redoc_url=None)
    eval_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"error": exc.message})

    def _params_for(k, threshold, min_support, top) -> PredictorParams:
        params = _merge_params(defaults, k, threshold, min_support, top)
        if params.k > bundle.markov.k:
            raise ApiError(
                f"markov model is trained to order {bundle.markov.k}; "
                f"restart the service with a higher order to use k={params.k}"
            )
        return params

    @app.get("/api/v1/categories")
    def categories():
        return {"categories": [{"id": c.id, "name": c.name} for c in bundle.dataset.catalog]}

    @app.get("/api/v1/stats")
    def stats():
        return stats_payload(bundle)

    @app.get("/api/v1/predict")
    def predict(
        prefix: str = "",
        top: str | None = None,
        k: str | None = None,
        threshold: str | None = None,
        min_support: str | None = None,
    ):
        params = _params_for(k, threshold, min_support, top)
        pages = parse_prefix_text(prefix)
        try:
            prediction = predict_next(bundle, pages, params)
        except ValueError as exc:
            raise ApiError(str(exc)) from None
        return prediction_payload(bundle, prediction)

    @app.get("/api/v1/expand")
    def expand(
        prefix: str = "",
        depth: int = 1,
        top: str | None = None,
        k: str | None = None,
        threshold: str | None = None,
        min_support: str | None = None,
    ):
        params = _params_for(k, threshold, min_support, top)
        pages = parse_prefix_text(prefix)
        if not 0 <= depth <= 5:
            raise ApiError("depth must be between 0 and 5")
        try:
            tree = expand_whatif(bundle, pages, depth, params)
        except ValueError as exc:
            raise ApiError(str(exc)) from None
        payload = tree_payload(bundle, tree)
        payload["params"] = params.as_dict()
        return payload

    @app.post("/api/v1/evaluate")
    def evaluate(req: EvaluateRequest):
        params = _merge_params(defaults, req.k, req.threshold, req.min_support, req.top_n)
        try:
            task = EvalTask.parse(req.task, req.min_len, req.max_len)
        except ValueError as exc:
            raise ApiError(str(exc)) from None
        with eval_lock:
            try:
                if req.method == "cv":
                    report = cross_validate(
                        bundle.dataset, req.folds, task, params, req.kmm_enabled, req.seed
                    )
                elif req.method == "bootstrap":
                    report = bootstrap_validate(
                        bundle.dataset, req.resamples, task, params, req.kmm_enabled, req.seed
                    )
                else:
                    raise ApiError(f"unknown method {req.method!r}: expected cv or bootstrap")
            except ValueError as exc:
                raise ApiError(str(exc)) from None
        return report.as_dict()

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="explorer")

    return app
