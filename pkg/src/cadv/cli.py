"""Command line interface: analyze a source tree, serve a model document."""

from __future__ import annotations

import datetime
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from .errors import CadvError, MalformedDocument, OverrideConflict, RootNotFound, VersionMismatch
from .java_parser import scan_project
from .model import SourceMeta, build_model, emit_document, load_document
from .server import create_app, default_ui_dir


@dataclass(frozen=True)
class AnalyzeConfig:
    root: str
    excludes: tuple[str, ...] = ()
    out: str = "cadv-model.json"
    colors: str | None = None


@dataclass(frozen=True)
class ServeConfig:
    model_file: str
    port: int = 8000
    bind: str = "127.0.0.1"
    ui_dir: str | None = None


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _newest_mtime(root: Path, rel_paths) -> str:
    """Newest mtime among the parsed files, as ISO-8601 UTC.

    Derived from the tree rather than the wall clock so re-analyzing the
    same tree emits byte-identical documents.
    """
    newest = None
    for rel in rel_paths:
        try:
            ts = (root / rel).stat().st_mtime
        except OSError:
            continue
        newest = ts if newest is None else max(newest, ts)
    if newest is None:
        return ""
    dt = datetime.datetime.fromtimestamp(int(newest), tz=datetime.timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def _load_overrides(path: str) -> dict[str, str]:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or not isinstance(data.get("colors", {}), dict):
        raise CadvError(f"{path}: expected an object with a 'colors' mapping")
    return {str(k): str(v) for k, v in data.get("colors", {}).items()}


def cmd_analyze(cfg: AnalyzeConfig) -> int:
    try:
        scan = scan_project(cfg.root, cfg.excludes)
    except RootNotFound:
        _err(f"root directory not found: {cfg.root}")
        return 1

    overrides = None
    if cfg.colors:
        try:
            overrides = _load_overrides(cfg.colors)
        except (OSError, json.JSONDecodeError, CadvError) as exc:
            _err(f"cannot read colors file: {exc}")
            return 1

    for s in scan.skipped:
        print(f"warning: skipped {s.path}: {s.reason}", file=sys.stderr)

    meta = SourceMeta(
        root_path=cfg.root,
        file_count=len(scan.files),
        skipped=scan.skipped,
        source_mtime=_newest_mtime(Path(cfg.root), (f.path for f in scan.files)),
    )
    try:
        model = build_model(scan.files, meta, overrides)
    except OverrideConflict as exc:
        _err(str(exc))
        return 1

    text = emit_document(model)
    try:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        _err(f"cannot write {cfg.out}: {exc.strerror or exc}")
        return 2

    class_count = sum(1 for _ in model.classes_by_name)
    total = sum(s.total_count for s in model.schemas)
    print(f"parsed {len(scan.files)} files ({len(scan.skipped)} skipped), "
          f"{class_count} classes, {total} annotations")
    if model.schemas:
        width = max(len(s.id) for s in model.schemas)
        print(f"{'schema'.ljust(width)}  count  color")
        for s in model.schemas:
            color = model.colors.colors.get(s.id, model.colors.black)
            print(f"{s.id.ljust(width)}  {s.total_count:>5}  {color}")
    else:
        print("no annotations found")
    print(f"model written to {cfg.out}")
    return 0


def cmd_serve(cfg: ServeConfig) -> int:
    try:
        text = Path(cfg.model_file).read_text(encoding="utf-8")
    except OSError as exc:
        _err(f"cannot read {cfg.model_file}: {exc.strerror or exc}")
        return 1

    stale_reason = None
    model = None
    try:
        model = load_document(text)
    except VersionMismatch as exc:
        stale_reason = f"model document version mismatch: {exc}"
        print(f"warning: {stale_reason}; serving 410 on API routes", file=sys.stderr)
    except MalformedDocument as exc:
        _err(f"malformed model document: {exc}")
        return 1

    ui = cfg.ui_dir or default_ui_dir()
    app = create_app(model, ui_dir=ui, stale_reason=stale_reason)
    import uvicorn

    uvicorn.run(app, host=cfg.bind, port=cfg.port, log_level="info")
    return 0


@click.group()
def main() -> None:
    """Analyze Java annotation usage and serve the interactive explorer."""


@main.command()
@click.argument("root")
@click.option("--exclude", "-x", multiple=True, metavar="GLOB",
              help="Skip files matching this glob (relative to ROOT); repeatable.")
@click.option("--out", "-o", default="cadv-model.json", show_default=True,
              help="Output path for the model document.")
@click.option("--colors", default=None, metavar="FILE",
              help="JSON file with schema color overrides.")
def analyze(root: str, exclude: tuple[str, ...], out: str, colors: str | None) -> None:
    """Scan ROOT for .java files and write a model document."""
    sys.exit(cmd_analyze(AnalyzeConfig(root=root, excludes=exclude, out=out, colors=colors)))


@main.command()
@click.argument("model_file")
@click.option("--port", default=8000, show_default=True)
@click.option("--bind", default="127.0.0.1", show_default=True)
@click.option("--ui", "ui_dir", default=None, metavar="DIR",
              help="Directory with the built web UI (defaults to ./frontend/dist if present).")
def serve(model_file: str, port: int, bind: str, ui_dir: str | None) -> None:
    """Serve MODEL_FILE over HTTP with the JSON API and web UI."""
    sys.exit(cmd_serve(ServeConfig(model_file=model_file, port=port, bind=bind, ui_dir=ui_dir)))


if __name__ == "__main__":
    main()
