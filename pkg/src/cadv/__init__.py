"""Circle-packing explorer for Java annotation usage."""

from .errors import (
    CadvError,
    ClassNotFound,
    EmptyInput,
    MalformedDocument,
    OverrideConflict,
    PackageNotFound,
    ParseGaveUp,
    RootNotFound,
    UnreadableFile,
    VersionMismatch,
)
from .java_parser import (
    ImportDecl,
    RawAnnotation,
    RawElement,
    RawType,
    ScanResult,
    SourceFile,
    parse_file,
    parse_path,
    scan_project,
)
from .layout import (
    LayoutCircle,
    LayoutTree,
    enclose,
    layout_class_view,
    layout_package_view,
    layout_system_view,
    layout_to_document,
    pack_siblings,
)
from .metrics import (
    AnnotationUse,
    ClassMetrics,
    compute_aa,
    compute_aed,
    compute_class_metrics,
    compute_locad,
)
from .model import (
    ClassModel,
    CodeElement,
    PackageNode,
    ProjectModel,
    SourceMeta,
    build_model,
    emit_document,
    load_document,
)
from .palette import Color, ColorAssignment, assign_colors
from .schema_resolver import Resolution, Schema, collect_schemas, family_key, resolve
from .server import create_app

__version__ = "0.1.0"

__all__ = [
    "AnnotationUse", "CadvError", "ClassMetrics", "ClassModel", "ClassNotFound",
    "CodeElement", "Color", "ColorAssignment", "EmptyInput", "ImportDecl",
    "LayoutCircle", "LayoutTree", "MalformedDocument", "OverrideConflict",
    "PackageNode", "PackageNotFound", "ParseGaveUp", "ProjectModel",
    "RawAnnotation", "RawElement", "RawType", "Resolution", "RootNotFound",
    "ScanResult", "Schema", "SourceFile", "SourceMeta", "UnreadableFile",
    "VersionMismatch", "assign_colors", "build_model", "collect_schemas",
    "compute_aa", "compute_aed", "compute_class_metrics", "compute_locad",
    "create_app", "emit_document", "enclose", "family_key",
    "layout_class_view", "layout_package_view", "layout_system_view",
    "layout_to_document", "load_document", "pack_siblings", "parse_file",
    "parse_path", "resolve", "scan_project",
]
