"""HTTP API serving one immutable model.

The server never mutates the model; view changes are expressed entirely
through query parameters, so layouts are cached per (view, focus, hide)
and concurrent requests are safe.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import ClassNotFound, PackageNotFound
from .layout import (
    layout_class_view,
    layout_package_view,
    layout_system_view,
    layout_to_document,
)
from .model import ProjectModel

_VIEWS = ("system", "package", "class")

_PLACEHOLDER_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>cadv</title></head>
<body style="font-family: sans-serif; background: #ececec;">
<h1>cadv server</h1>
<p>No UI bundle is installed. The API is available:</p>
<ul>
<li><a href="/api/project">/api/project</a></li>
<li><a href="/api/layout?view=system">/api/layout?view=system</a></li>
</ul>
</body></html>
"""


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=status)


def create_app(model: ProjectModel | None, ui_dir: str | Path | None = None,
               stale_reason: str | None = None) -> FastAPI:
    """Build the application.

    With ``model=None`` the app still starts but answers every API request
    with 410, reporting ``stale_reason`` (a model document whose version does
    not match this server).
    """
    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)

    @lru_cache(maxsize=256)
    def layout_doc(view: str, focus: str, hide: tuple[str, ...]) -> dict:
        hidden = frozenset(hide)
        if view == "system":
            tree = layout_system_view(model, hidden)
        elif view == "package":
            tree = layout_package_view(model, focus, hidden)
        else:
            tree = layout_class_view(model, focus, hidden)
        return layout_to_document(tree, model.colors)

    @app.get("/api/project")
    def project() -> JSONResponse:
        if model is None:
            return _error(410, stale_reason or "model document version mismatch")
        return JSONResponse({
            "meta": {
                "rootPath": model.meta.root_path,
                "fileCount": model.meta.file_count,
                "skippedCount": len(model.meta.skipped),
                "skipped": [{"path": s.path, "reason": s.reason} for s in model.meta.skipped],
                "sourceMtime": model.meta.source_mtime,
            },
            "schemas": [
                {"id": s.id, "count": s.total_count,
                 "color": model.colors.colors.get(s.id, model.colors.black)}
                for s in model.schemas
            ],
        })

    @app.get("/api/layout")
    def layout(request: Request) -> JSONResponse:
        if model is None:
            return _error(410, stale_reason or "model document version mismatch")
        params = request.query_params
        view = params.get("view", "")
        if view not in _VIEWS:
            return _error(400, f"view must be one of {', '.join(_VIEWS)}")
        metric = params.get("metric", "default")
        if metric != "default":
            return _error(400, "only metric=default is supported")
        focus = params.get("focus", "")
        if view == "system":
            focus = ""
        hide = tuple(sorted({h for h in params.get("hide", "").split(",") if h}))
        try:
            doc = layout_doc(view, focus, hide)
        except PackageNotFound:
            return _error(404, f"unknown package: {focus or '<root>'}")
        except ClassNotFound:
            return _error(404, f"unknown class: {focus}")
        return JSONResponse(doc)

    @app.get("/api/source-ref")
    def source_ref(request: Request) -> JSONResponse:
        if model is None:
            return _error(410, stale_reason or "model document version mismatch")
        qualified = request.query_params.get("class", "")
        if not qualified:
            return _error(400, "missing class parameter")
        try:
            cls = model.find_class(qualified)
        except ClassNotFound:
            return _error(404, f"unknown class: {qualified}")
        return JSONResponse({"class": cls.qualified_name, "path": cls.path, "line": cls.line})

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:
        @app.get("/")
        def index() -> HTMLResponse:
            return HTMLResponse(_PLACEHOLDER_PAGE)

    return app


def default_ui_dir() -> Path | None:
    """The built web UI, when the frontend package sits next to the cwd."""
    candidate = Path.cwd() / "frontend" / "dist"
    return candidate if candidate.is_dir() else None
