from __future__ import annotations

import random
from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from cadv.java_parser import parse_file
from cadv.metrics import (
    compute_aa,
    compute_aed,
    compute_class_metrics,
    compute_locad,
    flatten_uses,
)
from javagen import JavaGen


def src(*lines: str) -> str:
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# worked example values

class TestPersistenceExample:
    def test_class_totals(self, persistence_file):
        m = compute_class_metrics(persistence_file.types[0], persistence_file)
        assert m.ac == 10
        assert m.asc == 2

    def test_argument_counts(self, persistence_file):
        uses = flatten_uses(persistence_file.types[0], persistence_file)
        by_name = {}
        for u in uses:
            by_name.setdefault(u.simple_name, []).append(u.aa)
        assert by_name["AssociationOverrides"] == [1]
        assert by_name["AssociationOverride"] == [2, 2]
        assert by_name["JoinColumn"] == [1, 1]
        assert by_name["NamedQuery"] == [2]
        assert by_name["Stateless"] == [0]
        assert by_name["TransactionAttribute"] == [1, 1]
        assert by_name["DiscriminatorColumn"] == [2]

    def test_line_spans(self, persistence_file):
        uses = flatten_uses(persistence_file.types[0], persistence_file)
        by_name = {}
        for u in uses:
            by_name.setdefault(u.simple_name, []).append(u.locad)
        assert by_name["AssociationOverrides"] == [5]
        assert by_name["NamedQuery"] == [4]
        assert by_name["AssociationOverride"] == [2, 2]
        assert by_name["JoinColumn"] == [1, 1]
        assert by_name["Stateless"] == [1]

    def test_element_totals(self, persistence_file):
        ty = persistence_file.types[0]
        by_element = {el.name: compute_aed(el) for el in ty.elements}
        assert by_element == {"Example": 7, "exampleMethodA": 2, "exampleMethodB": 1}

    def test_depth_distribution(self, persistence_file):
        uses = flatten_uses(persistence_file.types[0], persistence_file)
        assert Counter(u.depth for u in uses) == {0: 6, 1: 2, 2: 2}

    def test_schema_assignment(self, persistence_file):
        uses = flatten_uses(persistence_file.types[0], persistence_file)
        counts = Counter(u.schema_id for u in uses)
        assert counts == {"javax.persistence": 7, "javax.ejb": 3}


class TestJunitExample:
    def test_class_totals(self, junit_file):
        m = compute_class_metrics(junit_file.types[0], junit_file)
        assert m.ac == 3
        assert m.asc == 1

    def test_every_element_has_one_annotation(self, junit_file):
        ty = junit_file.types[0]
        assert [compute_aed(el) for el in ty.elements] == [1, 1, 1]


# ---------------------------------------------------------------------------
# metric definitions on small inputs

def test_aa_marker_and_empty_parens_are_zero():
    sf = parse_file(src("import a.b.X;", "@X", "class C { }"), "t.java")
    marker = sf.types[0].elements[0].annotations[0]
    assert compute_aa(marker) == 0
    sf = parse_file(src("import a.b.X;", "@X()", "class C { }"), "t.java")
    empty = sf.types[0].elements[0].annotations[0]
    assert compute_aa(empty) == 0


def test_aa_counts_only_top_level_arguments():
    sf = parse_file(src(
        "import a.b.X;",
        '@X(names = {"a", "b", "c"}, size = 3, query = "x, y")',
        "class C { }",
    ), "t.java")
    assert compute_aa(sf.types[0].elements[0].annotations[0]) == 3


def test_locad_single_line_is_one():
    sf = parse_file(src("import a.b.X;", "@X(1)", "class C { }"), "t.java")
    assert compute_locad(sf.types[0].elements[0].annotations[0]) == 1


def test_locad_counts_spanned_lines_inclusive():
    sf = parse_file(src(
        "import a.b.X;",
        "@X(a = 1,",
        "   b = 2,",
        "   c = 3)",
        "class C { }",
    ), "t.java")
    assert compute_locad(sf.types[0].elements[0].annotations[0]) == 3


def test_aed_includes_nested_occurrences():
    sf = parse_file(src(
        "import a.b.X;",
        "import a.b.Y;",
        "class C {",
        "  @X(@Y(@Y))",
        "  @Y",
        "  int f;",
        "}",
    ), "t.java")
    el = sf.types[0].elements[0]
    assert compute_aed(el) == 4


def test_ac_excludes_nested_types():
    sf = parse_file(src(
        "import a.b.X;",
        "class Outer {",
        "  @X int f;",
        "  class Inner {",
        "    @X int g;",
        "    @X int h;",
        "  }",
        "}",
    ), "t.java")
    outer, inner = sf.types[0], sf.types[0].nested[0]
    assert compute_class_metrics(outer, sf).ac == 1
    assert compute_class_metrics(inner, sf).ac == 2


def test_asc_counts_distinct_schemas():
    sf = parse_file(src(
        "import a.b.X;",
        "import c.d.Y;",
        "class C {",
        "  @X @Y @X int f;",
        "}",
    ), "t.java")
    m = compute_class_metrics(sf.types[0], sf)
    assert (m.ac, m.asc) == (3, 2)


# ---------------------------------------------------------------------------
# flattening

def test_flatten_preserves_source_order_and_element_index():
    sf = parse_file(src(
        "import a.b.X;",
        "import a.b.Y;",
        "@X(@Y)",
        "class C {",
        "  @Y int f;",
        "  @X void m() { }",
        "}",
    ), "t.java")
    uses = flatten_uses(sf.types[0], sf)
    assert [(u.simple_name, u.depth, u.element_index) for u in uses] == [
        ("X", 0, 0), ("Y", 1, 0), ("Y", 0, 1), ("X", 0, 2),
    ]
    assert [u.line for u in uses] == [3, 3, 5, 6]


def test_flatten_reports_last_segment_for_dotted_names():
    sf = parse_file(src("@a.b.X", "class C { }"), "t.java")
    uses = flatten_uses(sf.types[0], sf)
    assert uses[0].simple_name == "X"
    assert uses[0].schema_id == "a.b"


# ---------------------------------------------------------------------------
# invariants on generated sources

@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_generated_metric_invariants(seed):
    gf = JavaGen(random.Random(seed)).generate(seed % 991)
    sf = parse_file(gf.text, gf.path)

    def walk(ty):
        yield ty
        for nested in ty.nested:
            yield from walk(nested)

    for top in sf.types:
        for ty in walk(top):
            uses = flatten_uses(ty, sf)
            m = compute_class_metrics(ty, sf)
            assert m.ac == len(uses)
            assert m.ac == sum(compute_aed(el) for el in ty.elements)
            assert m.asc == len({u.schema_id for u in uses})
            assert m.asc <= max(m.ac, 1) or m.ac == 0
            for u in uses:
                assert u.locad >= 1
                assert u.aa >= 0
                assert 0 <= u.element_index < len(ty.elements)
