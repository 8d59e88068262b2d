"""Map annotation occurrences to their schema (the declaring package).

Resolution is a textual heuristic over the compilation unit's imports; no
classpath is consulted.  The precedence order is fixed and total:

1. a dotted written name is taken as fully qualified;
2. an exact non-wildcard import wins;
3. the well-known ``java.lang`` annotations need no import;
4. exactly one non-static wildcard import claims the name;
5. an ``@interface`` declared in the same file resolves to the file's package;
6. anything else (including several competing wildcards) is ``unresolved``.

Static imports never resolve annotations.  Nested annotations resolve
independently through the same rules.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .java_parser import RawAnnotation, RawType, SourceFile, iter_annotations, iter_types

UNRESOLVED = "unresolved"

JAVA_LANG_ANNOTATIONS = frozenset({
    "Override", "Deprecated", "SuppressWarnings", "SafeVarargs", "FunctionalInterface",
})


@dataclass(frozen=True)
class Resolution:
    schema_id: str
    method: str  # explicit-import | wildcard-import | fully-qualified |
                 # java-lang-default | same-package | unresolved


@dataclass(frozen=True)
class Schema:
    id: str
    display_name: str
    total_count: int


def family_key(schema_id: str) -> str:
    """First two package segments; schemas sharing it are related."""
    parts = schema_id.split(".")
    return ".".join(parts[:2])


def _declares_annotation_type(types: Iterable[RawType], simple: str) -> bool:
    for t in types:
        if t.kind == "annotation" and t.name == simple:
            return True
        if _declares_annotation_type(t.nested, simple):
            return True
    return False


def resolve(annotation: RawAnnotation, file: SourceFile) -> Resolution:
    """Resolve one occurrence against its compilation unit."""
    written = annotation.simple_name
    if "." in written:
        return Resolution(written.rsplit(".", 1)[0], "fully-qualified")
    for imp in file.imports:
        if imp.is_static or imp.is_wildcard:
            continue
        pkg, _, last = imp.path.rpartition(".")
        if last == written:
            if not pkg:
                return Resolution(UNRESOLVED, "unresolved")
            return Resolution(pkg, "explicit-import")
    if written in JAVA_LANG_ANNOTATIONS:
        return Resolution("java.lang", "java-lang-default")
    wildcards = [imp for imp in file.imports if imp.is_wildcard and not imp.is_static]
    if len(wildcards) == 1:
        return Resolution(wildcards[0].path, "wildcard-import")
    if _declares_annotation_type(file.types, written):
        if file.package_name:
            return Resolution(file.package_name, "same-package")
        return Resolution(UNRESOLVED, "unresolved")
    return Resolution(UNRESOLVED, "unresolved")


def iter_occurrences(file: SourceFile):
    """Yield (annotation, element, type) for every occurrence in the file."""
    for ty in iter_types(file):
        for el in ty.elements:
            for root in el.annotations:
                for ann in iter_annotations(root):
                    yield ann, el, ty


def collect_schemas(files: Iterable[SourceFile]) -> list[Schema]:
    """Aggregate occurrence counts per schema across the whole project.

    Nested occurrences count individually.  Order is descending count, then
    schema id, so the result doubles as the legend order.
    """
    counts: Counter[str] = Counter()
    for f in files:
        for ann, _el, _ty in iter_occurrences(f):
            counts[resolve(ann, f).schema_id] += 1
    return [
        Schema(sid, sid, n)
        for sid, n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    ]
