"""Hierarchical project model and its JSON interchange format.

The model is a package tree rooted at a synthetic root package, with one
ClassModel per parsed type (nested types flattened as ``Outer.Inner``).
Models are immutable after construction and safe to share across threads.

Documents use the ``cadv-model/1`` format and serialize deterministically:
analyzing the same tree twice yields byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ClassNotFound, MalformedDocument, PackageNotFound, VersionMismatch
from .java_parser import SkippedFile, SourceFile
from .metrics import AnnotationUse, ClassMetrics, flatten_uses
from .palette import ColorAssignment, assign_colors
from .schema_resolver import Schema

MODEL_VERSION = "cadv-model/1"


@dataclass(frozen=True)
class CodeElement:
    kind: str  # type | method | field | constructor | parameter
    name: str
    aed: int


@dataclass(frozen=True)
class ClassModel:
    name: str  # simple name; nested types keep the dotted form Outer.Inner
    qualified_name: str
    path: str
    line: int
    elements: tuple[CodeElement, ...]
    annotations: tuple[AnnotationUse, ...]
    metrics: ClassMetrics


@dataclass(frozen=True)
class PackageNode:
    name: str  # single segment; "" only at the root
    qualified_name: str  # "" at the root
    children: tuple["PackageNode", ...]
    classes: tuple[ClassModel, ...]
    schema_counts: dict[str, int]  # occurrences in classes directly here
    recursive_counts: dict[str, int]  # own plus all descendants


@dataclass(frozen=True)
class SourceMeta:
    root_path: str
    file_count: int
    skipped: tuple[SkippedFile, ...]
    source_mtime: str  # newest mtime among parsed files, ISO-8601 UTC; "" if none


@dataclass(frozen=True)
class ProjectModel:
    root: PackageNode
    schemas: tuple[Schema, ...]
    colors: ColorAssignment
    meta: SourceMeta
    packages_by_name: dict[str, PackageNode] = field(compare=False, default_factory=dict)
    classes_by_name: dict[str, ClassModel] = field(compare=False, default_factory=dict)

    def find_package(self, qualified_name: str) -> PackageNode:
        node = self.packages_by_name.get(qualified_name)
        if node is None:
            raise PackageNotFound(qualified_name or "<root>")
        return node

    def find_class(self, qualified_name: str) -> ClassModel:
        cls = self.classes_by_name.get(qualified_name)
        if cls is None:
            raise ClassNotFound(qualified_name)
        return cls


def _count_uses(uses: Iterable[AnnotationUse]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for u in uses:
        counts[u.schema_id] = counts.get(u.schema_id, 0) + 1
    return dict(sorted(counts.items()))


def _merge_counts(*maps: Mapping[str, int]) -> dict[str, int]:
    out: dict[str, int] = {}
    for m in maps:
        for k, v in m.items():
            out[k] = out.get(k, 0) + v
    return dict(sorted(out.items()))


def _classes_from_file(file: SourceFile) -> list[ClassModel]:
    out: list[ClassModel] = []

    def walk(raw, prefix: str) -> None:
        dotted = f"{prefix}.{raw.name}" if prefix else raw.name
        qualified = f"{file.package_name}.{dotted}" if file.package_name else dotted
        uses = tuple(flatten_uses(raw, file))
        elements = tuple(
            CodeElement(el.kind, el.name, sum(1 for u in uses if u.element_index == i))
            for i, el in enumerate(raw.elements)
        )
        out.append(ClassModel(
            name=dotted,
            qualified_name=qualified,
            path=file.path,
            line=raw.start_line,
            elements=elements,
            annotations=uses,
            metrics=ClassMetrics(ac=len(uses), asc=len({u.schema_id for u in uses})),
        ))
        for nested in raw.nested:
            walk(nested, dotted)

    for raw in file.types:
        walk(raw, "")
    return out


def build_model(files: Sequence[SourceFile], meta: SourceMeta | None = None,
                color_overrides: Mapping[str, str] | None = None) -> ProjectModel:
    """Assemble the package tree, schema legend, and colors from parsed files."""
    by_package: dict[str, list[ClassModel]] = {}
    seen_names: dict[str, int] = {}
    all_uses: list[AnnotationUse] = []
    for f in files:
        for cls in _classes_from_file(f):
            qn = cls.qualified_name
            bump = seen_names.get(qn, 0)
            seen_names[qn] = bump + 1
            if bump:  # duplicate FQN across files; keep both, disambiguated
                cls = ClassModel(cls.name, f"{qn}#{bump + 1}", cls.path, cls.line,
                                 cls.elements, cls.annotations, cls.metrics)
            by_package.setdefault(f.package_name, []).append(cls)
            all_uses.extend(cls.annotations)

    # materialize every package segment, including empty intermediates
    segment_tree: dict = {}
    for pkg in by_package:
        node = segment_tree
        for seg in pkg.split(".") if pkg else []:
            node = node.setdefault(seg, {})

    def build(name: str, qualified: str, subtree: dict) -> PackageNode:
        children = tuple(
            build(seg, f"{qualified}.{seg}" if qualified else seg, subtree[seg])
            for seg in sorted(subtree)
        )
        classes = tuple(sorted(by_package.get(qualified, []), key=lambda c: (c.name, c.qualified_name)))
        own = _count_uses(u for c in classes for u in c.annotations)
        recursive = _merge_counts(own, *(ch.recursive_counts for ch in children))
        return PackageNode(name, qualified, children, classes, own, recursive)

    root = build("", "", segment_tree)

    schema_counts = _count_uses(all_uses)
    schemas = tuple(
        Schema(sid, sid, n)
        for sid, n in sorted(schema_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    )
    colors = assign_colors(schemas, color_overrides)
    if meta is None:
        meta = SourceMeta("", len(files), (), "")

    packages: dict[str, PackageNode] = {}
    classes: dict[str, ClassModel] = {}

    def index(node: PackageNode) -> None:
        packages[node.qualified_name] = node
        for c in node.classes:
            classes[c.qualified_name] = c
        for ch in node.children:
            index(ch)

    index(root)
    return ProjectModel(root, schemas, colors, meta, packages, classes)


# ---------------------------------------------------------------------------
# serialization

def _package_json(node: PackageNode) -> dict:
    return {
        "name": node.name,
        "packages": [_package_json(ch) for ch in node.children],
        "classes": [
            {
                "name": c.name,
                "qualifiedName": c.qualified_name,
                "path": c.path,
                "line": c.line,
                "ac": c.metrics.ac,
                "asc": c.metrics.asc,
                "elements": [
                    {"kind": e.kind, "name": e.name, "aed": e.aed} for e in c.elements
                ],
                "annotations": [
                    {
                        "name": u.simple_name,
                        "schema": u.schema_id,
                        "aa": u.aa,
                        "locad": u.locad,
                        "depth": u.depth,
                        "line": u.line,
                        "element": u.element_index,
                    }
                    for u in c.annotations
                ],
            }
            for c in node.classes
        ],
        "schemaCounts": dict(node.schema_counts),
        "recursiveCounts": dict(node.recursive_counts),
    }


def to_document(model: ProjectModel) -> dict:
    return {
        "version": MODEL_VERSION,
        "meta": {
            "rootPath": model.meta.root_path,
            "fileCount": model.meta.file_count,
            "skippedCount": len(model.meta.skipped),
            "skipped": [{"path": s.path, "reason": s.reason} for s in model.meta.skipped],
            "sourceMtime": model.meta.source_mtime,
        },
        "schemas": [
            {"id": s.id, "count": s.total_count, "color": model.colors.colors.get(s.id, "#000000")}
            for s in model.schemas
        ],
        "root": _package_json(model.root),
    }


def emit_document(model: ProjectModel) -> str:
    """Serialize to cadv-model/1 JSON text; deterministic byte-for-byte."""
    return json.dumps(to_document(model), indent=2, ensure_ascii=False) + "\n"


class _Check:
    """Walks a decoded document, naming the offending field on failure."""

    def __init__(self, doc):
        self.doc = doc

    @staticmethod
    def expect(cond: bool, path: str, why: str) -> None:
        if not cond:
            raise MalformedDocument(f"{path}: {why}")

    def dict_at(self, value, path: str) -> dict:
        self.expect(isinstance(value, dict), path, "expected an object")
        return value

    def list_at(self, value, path: str) -> list:
        self.expect(isinstance(value, list), path, "expected an array")
        return value

    def str_at(self, value, path: str) -> str:
        self.expect(isinstance(value, str), path, "expected a string")
        return value

    def int_at(self, value, path: str, minimum: int = 0) -> int:
        self.expect(isinstance(value, int) and not isinstance(value, bool), path, "expected an integer")
        self.expect(value >= minimum, path, f"must be >= {minimum}")
        return value


def load_document(text_or_doc) -> ProjectModel:
    """Parse and validate a cadv-model/1 document back into a ProjectModel.

    Raises VersionMismatch for foreign versions and MalformedDocument (with
    the offending field's path) for structural problems.
    """
    if isinstance(text_or_doc, (str, bytes)):
        try:
            doc = json.loads(text_or_doc)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"document: not valid JSON ({exc})") from exc
    else:
        doc = text_or_doc
    ck = _Check(doc)
    ck.dict_at(doc, "document")
    version = doc.get("version")
    if version != MODEL_VERSION:
        raise VersionMismatch(f"expected {MODEL_VERSION}, found {version!r}")

    meta_obj = ck.dict_at(doc.get("meta"), "meta")
    skipped = tuple(
        SkippedFile(
            ck.str_at(ck.dict_at(s, f"meta.skipped[{i}]").get("path"), f"meta.skipped[{i}].path"),
            ck.str_at(s.get("reason"), f"meta.skipped[{i}].reason"),
        )
        for i, s in enumerate(ck.list_at(meta_obj.get("skipped", []), "meta.skipped"))
    )
    meta = SourceMeta(
        root_path=ck.str_at(meta_obj.get("rootPath", ""), "meta.rootPath"),
        file_count=ck.int_at(meta_obj.get("fileCount", 0), "meta.fileCount"),
        skipped=skipped,
        source_mtime=ck.str_at(meta_obj.get("sourceMtime", ""), "meta.sourceMtime"),
    )

    schemas: list[Schema] = []
    colors: dict[str, str] = {}
    for i, s in enumerate(ck.list_at(doc.get("schemas"), "schemas")):
        p = f"schemas[{i}]"
        ck.dict_at(s, p)
        sid = ck.str_at(s.get("id"), f"{p}.id")
        count = ck.int_at(s.get("count"), f"{p}.count")
        colors[sid] = ck.str_at(s.get("color"), f"{p}.color")
        schemas.append(Schema(sid, sid, count))

    def load_class(obj, path: str) -> ClassModel:
        ck.dict_at(obj, path)
        elements = []
        for j, e in enumerate(ck.list_at(obj.get("elements"), f"{path}.elements")):
            ep = f"{path}.elements[{j}]"
            ck.dict_at(e, ep)
            elements.append(CodeElement(
                ck.str_at(e.get("kind"), f"{ep}.kind"),
                ck.str_at(e.get("name"), f"{ep}.name"),
                ck.int_at(e.get("aed"), f"{ep}.aed"),
            ))
        uses = []
        for j, a in enumerate(ck.list_at(obj.get("annotations"), f"{path}.annotations")):
            ap = f"{path}.annotations[{j}]"
            ck.dict_at(a, ap)
            element_index = ck.int_at(a.get("element"), f"{ap}.element")
            ck.expect(element_index < len(elements), f"{ap}.element", "element index out of range")
            uses.append(AnnotationUse(
                simple_name=ck.str_at(a.get("name"), f"{ap}.name"),
                schema_id=ck.str_at(a.get("schema"), f"{ap}.schema"),
                aa=ck.int_at(a.get("aa"), f"{ap}.aa"),
                locad=ck.int_at(a.get("locad"), f"{ap}.locad", minimum=1),
                depth=ck.int_at(a.get("depth"), f"{ap}.depth"),
                line=ck.int_at(a.get("line"), f"{ap}.line", minimum=1),
                element_index=element_index,
            ))
        return ClassModel(
            name=ck.str_at(obj.get("name"), f"{path}.name"),
            qualified_name=ck.str_at(obj.get("qualifiedName"), f"{path}.qualifiedName"),
            path=ck.str_at(obj.get("path", ""), f"{path}.path"),
            line=ck.int_at(obj.get("line", 1), f"{path}.line", minimum=1),
            elements=tuple(elements),
            annotations=tuple(uses),
            metrics=ClassMetrics(
                ac=ck.int_at(obj.get("ac"), f"{path}.ac"),
                asc=ck.int_at(obj.get("asc"), f"{path}.asc"),
            ),
        )

    def counts_at(obj, path: str) -> dict[str, int]:
        ck.dict_at(obj, path)
        out = {}
        for k, v in obj.items():
            out[ck.str_at(k, path)] = ck.int_at(v, f"{path}.{k}")
        return dict(sorted(out.items()))

    def load_package(obj, path: str, qualified: str) -> PackageNode:
        ck.dict_at(obj, path)
        name = ck.str_at(obj.get("name", ""), f"{path}.name")
        children = []
        for j, p in enumerate(ck.list_at(obj.get("packages"), f"{path}.packages")):
            child_name = ck.str_at(ck.dict_at(p, f"{path}.packages[{j}]").get("name"), f"{path}.packages[{j}].name")
            child_qn = f"{qualified}.{child_name}" if qualified else child_name
            children.append(load_package(p, f"{path}.packages[{j}]", child_qn))
        classes = tuple(
            load_class(c, f"{path}.classes[{j}]")
            for j, c in enumerate(ck.list_at(obj.get("classes"), f"{path}.classes"))
        )
        return PackageNode(
            name=name,
            qualified_name=qualified,
            children=tuple(children),
            classes=classes,
            schema_counts=counts_at(obj.get("schemaCounts"), f"{path}.schemaCounts"),
            recursive_counts=counts_at(obj.get("recursiveCounts"), f"{path}.recursiveCounts"),
        )

    root = load_package(ck.dict_at(doc.get("root"), "root"), "root", "")

    packages: dict[str, PackageNode] = {}
    classes: dict[str, ClassModel] = {}

    def index(node: PackageNode) -> None:
        packages[node.qualified_name] = node
        for c in node.classes:
            classes[c.qualified_name] = c
        for ch in node.children:
            index(ch)

    index(root)
    return ProjectModel(
        root=root,
        schemas=tuple(schemas),
        colors=ColorAssignment(colors=colors),
        meta=meta,
        packages_by_name=packages,
        classes_by_name=classes,
    )
