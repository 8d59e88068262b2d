from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cadv.errors import ClassNotFound, MalformedDocument, PackageNotFound, VersionMismatch
from cadv.java_parser import parse_file
from cadv.model import (
    MODEL_VERSION,
    SourceMeta,
    build_model,
    emit_document,
    load_document,
    to_document,
)
from javagen import JavaGen


def src(*lines: str) -> str:
    return "\n".join(lines) + "\n"


def model_of(*files: tuple[str, str]):
    parsed = [parse_file(text, path) for path, text in files]
    return build_model(parsed, SourceMeta("mem", len(parsed), (), ""))


# ---------------------------------------------------------------------------
# tree construction

def test_demo_package_tree(demo_model):
    assert sorted(demo_model.packages_by_name) == ["", "a", "a.model", "a.tests"]
    root = demo_model.root
    assert root.qualified_name == ""
    assert [c.qualified_name for c in root.children] == ["a"]
    a = root.children[0]
    assert [c.qualified_name for c in a.children] == ["a.model", "a.tests"]
    assert a.classes == ()


def test_demo_class_lookup(demo_model):
    cls = demo_model.find_class("a.model.Example")
    assert cls.name == "Example"
    assert cls.path == "src/a/model/Example.java"
    assert cls.line == 21
    assert (cls.metrics.ac, cls.metrics.asc) == (10, 2)
    assert [(e.kind, e.name, e.aed) for e in cls.elements] == [
        ("type", "Example", 7),
        ("method", "exampleMethodA", 2),
        ("method", "exampleMethodB", 1),
    ]


def test_demo_schema_counts(demo_model):
    model = demo_model
    assert model.find_package("a.model").schema_counts == {
        "javax.ejb": 3, "javax.persistence": 7,
    }
    assert model.find_package("a").schema_counts == {}
    assert model.find_package("a").recursive_counts == {
        "javax.ejb": 3, "javax.persistence": 7, "org.junit": 3,
    }
    assert model.root.recursive_counts == model.find_package("a").recursive_counts


def test_demo_legend_order(demo_model):
    assert [(s.id, s.total_count) for s in demo_model.schemas] == [
        ("javax.persistence", 7), ("javax.ejb", 3), ("org.junit", 3),
    ]


def test_intermediate_packages_materialized():
    model = model_of(("d.java", src("package x.y.z;", "class D { }")))
    assert sorted(model.packages_by_name) == ["", "x", "x.y", "x.y.z"]
    assert model.find_package("x.y").classes == ()


def test_default_package_classes_sit_at_root():
    model = model_of(("d.java", src("class D { }")))
    assert [c.qualified_name for c in model.root.classes] == ["D"]
    assert model.find_class("D").name == "D"


def test_classes_sorted_by_name():
    model = model_of(
        ("b.java", src("package p;", "class Zeta { }")),
        ("a.java", src("package p;", "class Alpha { }")),
    )
    assert [c.name for c in model.find_package("p").classes] == ["Alpha", "Zeta"]


def test_duplicate_qualified_names_disambiguated():
    model = model_of(
        ("one/C.java", src("package p;", "class C { }")),
        ("two/C.java", src("package p;", "class C { }")),
    )
    names = sorted(c.qualified_name for c in model.find_package("p").classes)
    assert names == ["p.C", "p.C#2"]
    assert model.find_class("p.C#2").path == "two/C.java"


def test_nested_classes_flattened_with_dotted_names():
    model = model_of(("o.java", src(
        "package p;",
        "import a.b.N;",
        "class Outer {",
        "  @N class Inner { }",
        "}",
    )))
    inner = model.find_class("p.Outer.Inner")
    assert inner.name == "Outer.Inner"
    assert inner.metrics.ac == 1
    # nested occurrences belong to the nested class, not the outer one
    assert model.find_class("p.Outer").metrics.ac == 0


def test_find_package_and_class_raise():
    model = model_of(("d.java", src("package p;", "class D { }")))
    with pytest.raises(PackageNotFound):
        model.find_package("p.q")
    with pytest.raises(ClassNotFound):
        model.find_class("p.E")


# ---------------------------------------------------------------------------
# serialization format

def test_document_shape(demo_model):
    doc = to_document(demo_model)
    assert doc["version"] == MODEL_VERSION
    assert set(doc) == {"version", "meta", "schemas", "root"}
    assert set(doc["meta"]) == {"rootPath", "fileCount", "skippedCount", "skipped", "sourceMtime"}
    assert doc["meta"]["fileCount"] == 2
    pkg = doc["root"]["packages"][0]
    assert set(pkg) == {"name", "packages", "classes", "schemaCounts", "recursiveCounts"}
    cls = pkg["packages"][0]["classes"][0]
    assert set(cls) == {"name", "qualifiedName", "path", "line", "ac", "asc",
                        "elements", "annotations"}
    ann = cls["annotations"][0]
    assert set(ann) == {"name", "schema", "aa", "locad", "depth", "line", "element"}


def test_emit_is_deterministic(demo_model):
    assert emit_document(demo_model) == emit_document(demo_model)


def test_round_trip_preserves_model(demo_model):
    text = emit_document(demo_model)
    loaded = load_document(text)
    assert loaded == demo_model
    assert emit_document(loaded) == text


def test_round_trip_preserves_skip_reasons():
    parsed = [parse_file(src("package p;", "class C { }"), "C.java")]
    from cadv.java_parser import SkippedFile

    meta = SourceMeta("mem", 1, (SkippedFile("Bad.java", "parse gave up: x"),), "")
    model = build_model(parsed, meta)
    loaded = load_document(emit_document(model))
    assert loaded.meta.skipped == meta.skipped


# ---------------------------------------------------------------------------
# document validation

def _valid_doc(demo_model) -> dict:
    return json.loads(emit_document(demo_model))


def test_load_rejects_other_versions(demo_model):
    doc = _valid_doc(demo_model)
    doc["version"] = "cadv-model/2"
    with pytest.raises(VersionMismatch):
        load_document(doc)
    del doc["version"]
    with pytest.raises(VersionMismatch):
        load_document(doc)


def test_load_rejects_invalid_json():
    with pytest.raises(MalformedDocument):
        load_document("{not json")


def test_load_rejects_missing_schemas(demo_model):
    doc = _valid_doc(demo_model)
    del doc["schemas"]
    with pytest.raises(MalformedDocument, match="schemas"):
        load_document(doc)


def test_load_names_offending_field(demo_model):
    doc = _valid_doc(demo_model)
    cls = doc["root"]["packages"][0]["packages"][0]["classes"][0]
    cls["annotations"][1]["aa"] = "three"
    with pytest.raises(MalformedDocument, match=r"classes\[0\]\.annotations\[1\]\.aa"):
        load_document(doc)


def test_load_rejects_out_of_range_element_index(demo_model):
    doc = _valid_doc(demo_model)
    cls = doc["root"]["packages"][0]["packages"][0]["classes"][0]
    cls["annotations"][0]["element"] = 99
    with pytest.raises(MalformedDocument, match="element index out of range"):
        load_document(doc)


def test_load_rejects_zero_locad(demo_model):
    doc = _valid_doc(demo_model)
    cls = doc["root"]["packages"][0]["packages"][0]["classes"][0]
    cls["annotations"][0]["locad"] = 0
    with pytest.raises(MalformedDocument, match="locad"):
        load_document(doc)


def test_load_rejects_non_object_root(demo_model):
    doc = _valid_doc(demo_model)
    doc["root"] = []
    with pytest.raises(MalformedDocument, match="root"):
        load_document(doc)


# ---------------------------------------------------------------------------
# properties over generated projects

@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_generated_round_trip_and_count_invariants(seed):
    rng = random.Random(seed)
    gen = JavaGen(rng)
    files = [parse_file(gf.text, gf.path) for gf in (gen.generate(i) for i in range(rng.randint(1, 4)))]
    model = build_model(files, SourceMeta("mem", len(files), (), "2024-01-01T00:00:00Z"))

    text = emit_document(model)
    loaded = load_document(text)
    assert loaded == model
    assert emit_document(loaded) == text

    def check(node):
        merged: dict[str, int] = dict(node.schema_counts)
        for ch in node.children:
            check(ch)
            for k, v in ch.recursive_counts.items():
                merged[k] = merged.get(k, 0) + v
        assert node.recursive_counts == dict(sorted(merged.items()))
        own = {}
        for c in node.classes:
            assert c.metrics.ac == len(c.annotations)
            assert c.metrics.ac == sum(e.aed for e in c.elements)
            for u in c.annotations:
                own[u.schema_id] = own.get(u.schema_id, 0) + 1
        assert node.schema_counts == dict(sorted(own.items()))

    check(model.root)
    legend_total = sum(s.total_count for s in model.schemas)
    assert legend_total == sum(model.root.recursive_counts.values())
