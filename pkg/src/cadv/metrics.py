"""Annotation metrics computed from parsed declarations.

AC    annotations in a class, nested occurrences included
ASC   distinct annotation schemas used by a class
AA    top-level arguments of one annotation
AED   annotations on one code element, nested occurrences included
LOCAD lines of code occupied by one annotation
"""

from __future__ import annotations

from dataclasses import dataclass

from .java_parser import RawAnnotation, RawElement, RawType, SourceFile, iter_annotations
from .schema_resolver import resolve


@dataclass(frozen=True)
class AnnotationUse:
    """One resolved occurrence, flattened out of the parse tree.

    ``element_index`` points into the owning class's element list; the
    element that carries the depth-0 ancestor owns every nested occurrence.
    """

    simple_name: str
    schema_id: str
    aa: int
    locad: int
    depth: int
    line: int
    element_index: int


@dataclass(frozen=True)
class ElementMetrics:
    element_index: int
    aed: int


@dataclass(frozen=True)
class ClassMetrics:
    ac: int
    asc: int


def compute_aa(annotation: RawAnnotation) -> int:
    """Top-level argument count; '@X' and '@X()' are both 0."""
    return annotation.argument_count


def compute_locad(annotation: RawAnnotation) -> int:
    """Line span of the occurrence; a one-line annotation scores 1."""
    return annotation.end_line - annotation.start_line + 1


def compute_aed(element: RawElement) -> int:
    return sum(1 for root in element.annotations for _ in iter_annotations(root))


def flatten_uses(raw_type: RawType, file: SourceFile) -> list[AnnotationUse]:
    """All occurrences of a class in source order, resolved and measured."""
    uses: list[AnnotationUse] = []
    for idx, el in enumerate(raw_type.elements):
        for root in el.annotations:
            for ann in iter_annotations(root):
                uses.append(AnnotationUse(
                    simple_name=ann.last_segment,
                    schema_id=resolve(ann, file).schema_id,
                    aa=compute_aa(ann),
                    locad=compute_locad(ann),
                    depth=ann.nesting_depth,
                    line=ann.start_line,
                    element_index=idx,
                ))
    return uses


def compute_class_metrics(raw_type: RawType, file: SourceFile) -> ClassMetrics:
    """AC and ASC for one type; nested types are not included."""
    uses = flatten_uses(raw_type, file)
    return ClassMetrics(ac=len(uses), asc=len({u.schema_id for u in uses}))
