import pytest
from hypothesis import given, settings, strategies as st

from currentgraph.group import GroupSpec
from currentgraph.model import (
    CurrentGraph,
    Dart,
    ModelError,
    ParseError,
    apply_flip,
    parse,
    serialize,
)
from currentgraph.tracer import face_lengths, trace_faces

from conftest import K2_TEXT
from test_tracer import random_graph

G = GroupSpec((3, 12))


def test_one_edge_file():
    g = parse(K2_TEXT)
    assert len(g.vertices) == 2 and len(g.edges) == 1
    assert g.current(Dart(0, 0)) == G.element(0, 6)
    assert serialize(g) == K2_TEXT
    assert len(serialize(g).splitlines()) == 4


def test_empty_graph_is_header_only():
    g = CurrentGraph(G, {}, {}, {})
    assert serialize(g) == "group 3 12\n"
    assert parse("group 3 12\n") == g


def test_dart_listed_twice():
    text = "group 3 12\nv 0 : e0.0\nv 1 : e0.0\ne 0 sig +1 cur (0,1)\n"
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == 3 and info.value.column == 7
    assert "duplicate dart" in str(info.value)


def test_dangling_dart():
    with pytest.raises(ParseError, match="dangling"):
        parse("group 3 12\nv 0 : e0.0\ne 0 sig +1 cur (0,1)\n")
    with pytest.raises(ParseError, match="dangling"):
        parse("group 3 12\nv 0 : e0.0 e1.0\nv 1 : e0.1\ne 0 sig +1 cur (0,1)\n")


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("v 0 : e0.0\n", 1, 1, "first statement"),
        ("group 3 12\nv 0 : e0.0\nv 1 : e0.1\ne 0 sig +1 cur (0,1,2)\n", 4, 16, "unknown group element"),
        ("group 3 12\nv 0 : e0.0\nv 1 : e0.1\ne 0 sig +2 cur (0,1)\n", 4, 9, "bad signature"),
        ("group 3 12\nv 0 : e0.0\nv 1 : e0.1\ne 0 sig +1 cur (0,1) rev (0,1)\n", 4, 26, "inconsistency"),
        ("group 3 12\nv 0 ; e0.0\n", 2, 5, "expected ':'"),
        ("group 3 12\nv 0 : edge0\n", 2, 7, "bad dart"),
        ("group 3 12\nfoo\n", 2, 1, "unknown statement"),
        ("group Z3+Z4\n", 1, 7, "cannot parse group"),
    ],
)
def test_syntax_errors_carry_position(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in str(info.value)


def test_rev_consistent_with_signature():
    g = parse("group 3 12\nv 0 : e0.0\nv 1 : e0.1\ne 0 sig -1 cur (1,2) rev (1,2)\n")
    assert g.current(Dart(0, 1)) == G.element(1, 2)
    g = parse("group 3 12\nv 0 : e0.0\nv 1 : e0.1\ne 0 sig +1 cur (1,2) rev (2,10)\n")
    assert g.current(Dart(0, 1)) == G.element(2, 10)


def test_cw_ccw_shorthand():
    base = "group 3 12\n{a}\n{b}\ne 0 sig +1 cur (0,1)\ne 1 sig +1 cur (0,2)\ne 2 sig +1 cur (0,3)\n"
    explicit = parse(base.format(a="v 0 : e0.0 e1.0 e2.0", b="v 1 : e0.1 e2.1 e1.1"))
    drawn = parse(base.format(a="v 0 cw e0.0 e1.0 e2.0", b="v 1 ccw e0.1 e1.1 e2.1"))
    assert drawn == explicit


def test_canonical_serialization(cascade_s1):
    text = serialize(cascade_s1)
    assert parse(text) == cascade_s1
    assert serialize(parse(text)) == text
    # a rotation written from another starting dart is the same rotation
    g = parse("group 3 12\nv 1 : e1.1 e0.1 e2.1\nv 0 : e2.0 e0.0 e1.0\n"
              "e 0 sig +1 cur (0,1)\ne 1 sig +1 cur (0,2)\ne 2 sig +1 cur (0,3)\n")
    assert serialize(g).splitlines()[1:3] == ["v 0 : e0.0 e1.0 e2.0", "v 1 : e0.1 e2.1 e1.1"]


def test_current_relation(cascade_s1):
    for e, sig in cascade_s1.signatures.items():
        a, b = cascade_s1.current(Dart(e, 0)), cascade_s1.current(Dart(e, 1))
        assert a == (-b if sig == 1 else b)


def test_degree_sum(cascade_s1):
    assert sum(cascade_s1.degree(v) for v in cascade_s1.vertices) == 2 * len(cascade_s1.edges)


def test_flip_leaf_toggles_signature():
    g = parse(K2_TEXT)
    f = apply_flip(g, 0)
    assert f.signatures[0] == -1
    assert f.current(Dart(0, 0)) == g.current(Dart(0, 0))
    with pytest.raises(ModelError):
        apply_flip(g, 7)


def test_flip_loop_keeps_signature():
    g = parse("group 3 12\nv 0 : e0.0 e0.1 e1.0\nv 1 : e1.1\ne 0 sig -1 cur (0,1)\ne 1 sig +1 cur (0,2)\n")
    f = apply_flip(g, 0)
    assert f.signatures[0] == -1
    assert f.signatures[1] == -1
    assert apply_flip(f, 0) == g


def test_flip_involution_and_excess(cascade_s1):
    for v in cascade_s1.vertices:
        f = apply_flip(cascade_s1, v)
        assert apply_flip(f, v) == cascade_s1
        assert f.excess(v) == -cascade_s1.excess(v) or f.excess(v).order == cascade_s1.excess(v).order
        assert face_lengths(trace_faces(f)) == face_lengths(trace_faces(cascade_s1))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(0, 30), max_size=6))
def test_flip_sequences_preserve_faces(seed, flips):
    g = random_graph(seed)
    before = face_lengths(trace_faces(g))
    for v in flips:
        g = apply_flip(g, g.vertices[v % len(g.vertices)])
    assert face_lengths(trace_faces(g)) == before
