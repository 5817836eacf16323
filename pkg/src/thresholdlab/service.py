"""HTTP service exposing datasets, curves, threshold queries, and previews.

Datasets are uploaded once, stored immutably in memory with an opaque id,
and their threshold curve is built eagerly so every later query is a lookup
or a single scan. Undefined metrics serialize as null, never 0. Error bodies
always carry {status, code, detail}.
"""

from __future__ import annotations

import json
import math
import os
import threading
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.routing import APIRoute
from fastapi.staticfiles import StaticFiles

from . import __version__
from .curve import ThresholdCurve, build_curve, point_at
from .dataset import Dataset
from .ingest import IngestError, parse_any, write_csv
from .preview import allocate_icons, legend
from .queries import (
    InfeasibleError,
    MetricId,
    UndefinedMetricError,
    inverse_for_metric,
    optimize,
    parse_constraint,
)

DEFAULT_ADDR = "127.0.0.1:8808"
ENV_PREFIX = "THRESHOLDLAB_"


@dataclass
class ServiceConfig:
    """Runtime knobs; every field can also come from THRESHOLDLAB_* env vars."""

    addr: str = DEFAULT_ADDR
    static_dir: str | None = None
    fixtures_dir: str | None = None  # dataset files preloaded at startup
    snapshot_dir: str | None = None  # store persisted here across restarts
    offline: bool = True  # the service itself never calls external services
    cors_origins: tuple[str, ...] = ("*",)

    @classmethod
    def from_env(cls, env=os.environ) -> "ServiceConfig":
        def get(name: str, default=None):
            return env.get(ENV_PREFIX + name, default)

        origins = get("CORS_ORIGINS")
        return cls(
            addr=get("ADDR", DEFAULT_ADDR),
            static_dir=get("STATIC_DIR"),
            fixtures_dir=get("FIXTURES_DIR"),
            snapshot_dir=get("SNAPSHOT_DIR"),
            offline=get("OFFLINE", "1") not in ("0", "false", "no"),
            cors_origins=tuple(origins.split(",")) if origins else ("*",),
        )


class ApiError(Exception):
    """An error the API reports as a structured {status, code, detail} body."""

    def __init__(self, status: int, code: str, detail: str, **extra):
        assert status in (400, 404, 409, 422, 500)
        self.status = status
        self.code = code
        self.detail = detail
        self.extra = extra
        super().__init__(detail)

    def body(self) -> dict:
        return {"status": self.status, "code": self.code, "detail": self.detail, **self.extra}


@dataclass
class StoredDataset:
    id: str
    name: str
    created_at: str
    dataset: Dataset
    curve: ThresholdCurve

    def handle(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "n_total": self.dataset.n_total,
            "n_damaging": self.dataset.n_damaging,
            "created_at": self.created_at,
        }


class DatasetStore:
    """In-memory store: concurrent reads, exclusive insert, immutable entries."""

    def __init__(self):
        self._lock = threading.Lock()
        self._entries: dict[str, StoredDataset] = {}

    def add(
        self,
        name: str | None,
        dataset: Dataset,
        dataset_id: str | None = None,
        created_at: str | None = None,
    ) -> StoredDataset:
        with self._lock:
            entry = StoredDataset(
                id=dataset_id or uuid.uuid4().hex[:12],
                name=name or f"dataset-{len(self._entries) + 1}",
                created_at=created_at or datetime.now(timezone.utc).isoformat(),
                dataset=dataset,
                curve=build_curve(dataset),
            )
            if entry.id in self._entries:
                raise ApiError(409, "duplicate_id", f"dataset id {entry.id} already exists")
            self._entries[entry.id] = entry
        return entry

    def get(self, dataset_id: str) -> StoredDataset:
        entry = self._entries.get(dataset_id)
        if entry is None:
            raise ApiError(404, "dataset_not_found", f"no dataset with id {dataset_id!r}")
        return entry

    def list(self) -> list[StoredDataset]:
        return sorted(self._entries.values(), key=lambda e: (e.created_at, e.id))


def _parse_unit_float(raw: str | None, code: str, name: str) -> float:
    if raw is None:
        raise ApiError(400, code, f"missing required query parameter {name!r}")
    try:
        value = float(raw)
    except ValueError:
        raise ApiError(400, code, f"{name} must be a number, got {raw!r}") from None
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise ApiError(400, code, f"{name} must be in [0, 1], got {raw}")
    return value


def _parse_metric(raw: str | None) -> MetricId:
    if raw is None:
        raise ApiError(400, "bad_metric", "missing required query parameter 'metric'")
    try:
        return MetricId(raw)
    except ValueError:
        raise ApiError(
            400, "bad_metric", f"metric must be one of recall|precision|fpr, got {raw!r}"
        ) from None


def snapshot_store(store: DatasetStore, directory: str | Path) -> None:
    """Persist every stored dataset as CSV plus a manifest for reload."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = []
    for entry in store.list():
        filename = f"{entry.id}.csv"
        with open(directory / filename, "w", encoding="utf-8") as handle:
            write_csv(entry.dataset, handle)
        manifest.append(
            {"id": entry.id, "name": entry.name, "created_at": entry.created_at, "file": filename}
        )
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=2), encoding="utf-8")


def load_snapshot(store: DatasetStore, directory: str | Path) -> int:
    """Reload datasets written by snapshot_store; returns how many loaded."""
    directory = Path(directory)
    manifest_path = directory / "manifest.json"
    if not manifest_path.exists():
        return 0
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    count = 0
    for item in manifest:
        dataset = parse_any((directory / item["file"]).read_bytes(), "csv")
        store.add(item["name"], dataset, dataset_id=item["id"], created_at=item["created_at"])
        count += 1
    return count


def load_fixture_datasets(store: DatasetStore, directory: str | Path) -> int:
    """Load every *.csv / *.jsonl in a directory as a named dataset."""
    directory = Path(directory)
    count = 0
    for path in sorted(directory.glob("*")):
        if path.suffix.lower() not in (".csv", ".jsonl", ".ndjson"):
            continue
        fmt = "csv" if path.suffix.lower() == ".csv" else "jsonl"
        store.add(path.stem, parse_any(path.read_bytes(), fmt))
        count += 1
    return count


_FALLBACK_INDEX = """<!doctype html>
<html><head><title>thresholdlab</title></head>
<body>
<h1>thresholdlab service</h1>
<p>No UI bundle is configured. The JSON API lives under <a href="/api/routes">/api/routes</a>.</p>
</body></html>"""


def create_app(config: ServiceConfig | None = None, store: DatasetStore | None = None) -> FastAPI:
    config = config or ServiceConfig()
    store = store or DatasetStore()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if config.snapshot_dir:
            load_snapshot(store, config.snapshot_dir)
        if config.fixtures_dir and Path(config.fixtures_dir).is_dir():
            load_fixture_datasets(store, config.fixtures_dir)
        yield
        if config.snapshot_dir:
            snapshot_store(store, config.snapshot_dir)

    app = FastAPI(title="thresholdlab", version=__version__, lifespan=lifespan)
    app.state.config = config
    app.state.store = store

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.body())

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"status": 400, "code": "bad_request", "detail": str(exc)},
        )

    @app.exception_handler(Exception)
    async def handle_unexpected(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"status": 500, "code": "internal_error", "detail": str(exc)},
        )

    # -- routes -------------------------------------------------------------

    @app.post("/api/datasets", status_code=201)
    async def create_dataset(request: Request, name: str | None = None, format: str | None = None):
        """Upload a CSV or JSONL dataset body; builds its curve eagerly."""
        raw = await request.body()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise ApiError(422, "malformed_row", "body is not valid UTF-8", line=1) from None
        if format is not None and format not in ("csv", "jsonl"):
            raise ApiError(400, "bad_format", f"format must be csv or jsonl, got {format!r}")
        try:
            dataset = parse_any(text, format)
        except IngestError as exc:
            raise ApiError(422, exc.kind, exc.detail, line=exc.line) from None
        entry = store.add(name, dataset)
        return JSONResponse(status_code=201, content=entry.handle())

    @app.get("/api/datasets")
    def list_datasets():
        """Handles of every stored dataset."""
        return {"datasets": [entry.handle() for entry in store.list()]}

    @app.get("/api/datasets/{dataset_id}/metrics")
    def dataset_metrics(dataset_id: str, threshold: str | None = None):
        """Counts and metrics at one threshold."""
        entry = store.get(dataset_id)
        t = _parse_unit_float(threshold, "bad_threshold", "threshold")
        return point_at(entry.curve, t).as_dict()

    @app.get("/api/datasets/{dataset_id}/curve")
    def dataset_curve(dataset_id: str):
        """Every candidate operating point, thresholds ascending, ABOVE_MAX last (null)."""
        entry = store.get(dataset_id)
        return {
            "dataset_id": entry.id,
            "n_total": entry.dataset.n_total,
            "points": [p.as_dict() for p in entry.curve.points],
        }

    @app.get("/api/datasets/{dataset_id}/inverse")
    def dataset_inverse(dataset_id: str, metric: str | None = None, target: str | None = None):
        """Threshold achieving a metric target (see the query engine's rules)."""
        entry = store.get(dataset_id)
        metric_id = _parse_metric(metric)
        x = _parse_unit_float(target, "bad_target", "target")
        try:
            result = inverse_for_metric(entry.curve, metric_id, x)
        except InfeasibleError as exc:
            raise ApiError(409, "infeasible", str(exc)) from None
        except UndefinedMetricError as exc:
            raise ApiError(409, "undefined_metric", str(exc)) from None
        doc = result.as_dict()
        doc["query"] = {"metric": metric_id.value, "target": x}
        return doc

    @app.get("/api/datasets/{dataset_id}/optimize")
    def dataset_optimize(
        dataset_id: str,
        maximize: str | None = None,
        constraint: list[str] = Query(default=[]),
    ):
        """Maximize recall or precision subject to metric constraints."""
        entry = store.get(dataset_id)
        objective = _parse_metric(maximize)
        if objective is MetricId.FPR:
            raise ApiError(400, "bad_metric", "maximize must be recall or precision")
        try:
            constraints = tuple(parse_constraint(c) for c in constraint)
        except ValueError as exc:
            raise ApiError(400, "bad_constraint", str(exc)) from None
        try:
            result = optimize(entry.curve, objective, constraints)
        except InfeasibleError as exc:
            raise ApiError(409, "infeasible", str(exc)) from None
        except UndefinedMetricError as exc:
            raise ApiError(409, "undefined_metric", str(exc)) from None
        doc = result.as_dict()
        doc["query"] = {"maximize": objective.value, "constraints": [str(c) for c in constraints]}
        return doc

    @app.get("/api/datasets/{dataset_id}/preview")
    def dataset_preview(dataset_id: str, threshold: str | None = None, icons: str | None = None):
        """Pictogram apportionment of the outcome at one threshold."""
        entry = store.get(dataset_id)
        t = _parse_unit_float(threshold, "bad_threshold", "threshold")
        if icons is None:
            n_icons = 100
        else:
            try:
                n_icons = int(icons)
            except ValueError:
                raise ApiError(400, "bad_icons", f"icons must be an integer, got {icons!r}") from None
        if n_icons < 1:
            raise ApiError(400, "bad_icons", f"icons must be >= 1, got {n_icons}")
        point = point_at(entry.curve, t)
        grid = allocate_icons(point.counts, n_icons)
        doc = grid.as_dict()
        doc["threshold"] = t
        doc["counts"] = point.counts.as_dict()
        doc["legend"] = {cat.value: entry_.as_dict() for cat, entry_ in legend().items()}
        return doc

    @app.get("/api/routes")
    def list_routes():
        """Plain-JSON listing of every API route and its parameters."""
        routes = []
        for route in app.routes:
            if not isinstance(route, APIRoute) or not route.path.startswith("/api"):
                continue
            params = [p.name for p in route.dependant.path_params] + [
                p.name for p in route.dependant.query_params
            ]
            routes.append(
                {
                    "name": route.name,
                    "method": sorted(route.methods)[0],
                    "path": route.path,
                    "params": params,
                    "doc": (route.endpoint.__doc__ or "").strip(),
                }
            )
        return {"routes": routes}

    static_dir = config.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    else:

        @app.get("/", include_in_schema=False)
        def index():
            return HTMLResponse(_FALLBACK_INDEX)

    return app


def run(config: ServiceConfig) -> None:
    """Blockingly serve the app on config.addr (host:port)."""
    import uvicorn

    host, _, port_text = config.addr.partition(":")
    app = create_app(config)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port_text or 8808), log_level="info")
