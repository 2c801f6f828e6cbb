"""HTTP API exposing the closed-form model and the model store.

All JSON bodies are produced by :mod:`illusionspace.documents`, so a GET here
and the matching CLI call emit byte-identical canonical JSON. Domain errors
map to 422 with a machine-readable code, unknown models to 404, and malformed
query parameters to 400.
"""

from __future__ import annotations

import os
import warnings
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .documents import (
    FORMAT_VERSION,
    canonical_json,
    check_document,
    fit_report_document,
    inverse_document,
    space_document,
)
from .errors import (
    ExtrapolationWarning,
    FormatError,
    IllusionSpaceError,
    ModelNotFoundError,
)
from .model import GridSpec, build_illusion_space, contains, inverse_query
from .pipeline import fit_study
from .store import ModelStore, input_digest
from .study import parse_trials

CLOSED_FORM_ID = "closed-form"

# Numerator/denominator coefficients of the four threshold surfaces, keyed by
# monomial in (sp, ap) and the incongruence input (av for size, sv for angle).
CLOSED_FORM_COEFFICIENTS = {
    "size_dt": {
        "input": "av",
        "numerator": {"const": 275, "sp": 35, "sp^2": 1, "ap": 5, "av": 87,
                      "ap*av": -10, "sp*av": -2},
        "denominator": {"const": 489, "sp": 37, "ap": -7},
    },
    "size_ut": {
        "input": "av",
        "numerator": {"const": 1778, "sp": -86, "sp^2": 1, "ap": -30, "ap*sp": 1,
                      "av": -93, "ap*av": -4, "sp*av": 9},
        "denominator": {"const": 1197, "sp": -29, "ap": -26},
    },
    "angle_dt": {
        "input": "sv",
        "numerator": {"const": 275, "sp": -10, "sp^2": -1, "ap": -11, "ap*sp": 1,
                      "sv": 165, "sp*sv": -8},
        "denominator": {"const": 785, "sp": -59, "ap": -1},
    },
    "angle_ut": {
        "input": "sv",
        "numerator": {"const": -54, "sp": 23, "sp^2": -1, "ap": 10, "ap*sp": 1,
                      "sv": 873, "ap*sv": -20, "sp*sv": -74},
        "denominator": {"const": 604, "sp": -47, "ap": 5},
    },
}

_LANDING_PAGE = """<!doctype html>
<html><head><title>illusionspace</title></head>
<body>
<h1>illusionspace API</h1>
<p>The explorer UI is not built. Endpoints live under <code>/api/v1</code>:</p>
<ul>
<li><code>GET /api/v1/space?sp=6&amp;ap=8</code></li>
<li><code>GET /api/v1/check?sp=6&amp;ap=8&amp;sv=6.5&amp;av=8</code></li>
<li><code>GET /api/v1/inverse?sv=6&amp;av=8</code></li>
<li><code>POST /api/v1/fit</code> (CSV body)</li>
<li><code>GET /api/v1/models</code>, <code>GET /api/v1/models/{id}</code></li>
</ul>
</body></html>
"""


def _canonical_response(doc: dict, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(doc), media_type="application/json", status_code=status_code
    )


def closed_form_entry() -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "model_entry",
        "model_id": CLOSED_FORM_ID,
        "source": "closed_form",
        "description": (
            "Built-in rational-polynomial threshold surfaces over the studied "
            "domain (sizes 3-9 cm, taper angles 0-16 deg)."
        ),
        "coefficients": CLOSED_FORM_COEFFICIENTS,
    }


def create_app(store_root: str | os.PathLike | None = None,
               assets_dir: str | os.PathLike | None = None) -> FastAPI:
    """Build the API app around a store directory and optional UI assets."""
    app = FastAPI(title="illusionspace", docs_url="/api/docs", openapi_url="/api/openapi.json")
    store = ModelStore(store_root) if store_root is not None else None

    @app.exception_handler(IllusionSpaceError)
    async def domain_error(request: Request, err: IllusionSpaceError):
        status = 404 if isinstance(err, ModelNotFoundError) else 422
        return JSONResponse(
            status_code=status, content={"error": {"code": err.code, "message": str(err)}}
        )

    @app.exception_handler(RequestValidationError)
    async def param_error(request: Request, err: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "invalid_parameter", "message": str(err.errors())}},
        )

    @app.exception_handler(ValueError)
    async def value_error(request: Request, err: ValueError):
        return JSONResponse(
            status_code=422, content={"error": {"code": "invalid_argument", "message": str(err)}}
        )

    @app.get("/api/v1/space")
    def space(sp: float, ap: float) -> Response:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExtrapolationWarning)
            return _canonical_response(space_document(build_illusion_space(sp, ap)))

    @app.get("/api/v1/check")
    def check(sp: float, ap: float, sv: float, av: float) -> Response:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExtrapolationWarning)
            return _canonical_response(check_document(contains(sp, ap, sv, av), sp, ap, sv, av))

    @app.get("/api/v1/inverse")
    def inverse(
        sv: float,
        av: float,
        size_min: float = 3.0,
        size_max: float = 9.0,
        size_step: float = 0.1,
        angle_min: float = 0.0,
        angle_max: float = 16.0,
        angle_step: float = 0.25,
    ) -> Response:
        grid = GridSpec(size_min, size_max, size_step, angle_min, angle_max, angle_step)
        return _canonical_response(inverse_document(inverse_query(sv, av, grid)))

    @app.post("/api/v1/fit")
    async def fit(request: Request) -> Response:
        raw = await request.body()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise FormatError("request body is not valid UTF-8") from None
        records, issues = parse_trials(text)
        if not records:
            raise FormatError("no valid trials in the request body")
        report = fit_study(records)
        doc = fit_report_document(
            report, "unsaved", input_digest(raw), issues, len(records)
        )
        return _canonical_response(doc)

    @app.get("/api/v1/models")
    def models() -> Response:
        entries = [
            {"model_id": CLOSED_FORM_ID, "source": "closed_form"},
        ]
        if store is not None:
            for model_id in store.list_ids():
                entry = store.read(model_id)
                entries.append(
                    {
                        "model_id": model_id,
                        "source": entry.get("source", "fitted_from_data"),
                        "created_at": entry.get("created_at"),
                        "input_digest": entry.get("input_digest"),
                    }
                )
        doc = {"format_version": FORMAT_VERSION, "kind": "model_list", "models": entries}
        return _canonical_response(doc)

    @app.get("/api/v1/models/{model_id}")
    def model(model_id: str) -> Response:
        if model_id == CLOSED_FORM_ID:
            return _canonical_response(closed_form_entry())
        if store is None:
            raise ModelNotFoundError("no model store configured")
        return _canonical_response(store.read(model_id))

    assets = Path(assets_dir) if assets_dir is not None else None
    if assets is not None and assets.is_dir():
        app.mount("/", StaticFiles(directory=assets, html=True), name="ui")
    else:
        @app.get("/", response_class=HTMLResponse)
        def landing() -> str:
            return _LANDING_PAGE

    return app
