import random

import pytest
from hypothesis import given, settings, strategies as st

from currentgraph.group import GroupSpec
from currentgraph.model import CurrentGraph, Dart, apply_flip, parse
from currentgraph.tracer import (
    ALTERNATE,
    NORMAL,
    EdgeKind,
    FaceWalk,
    classify_edges,
    face_lengths,
    face_log,
    make_pure,
    orienting_flips,
    surface_orientable,
    trace_faces,
)

from conftest import K2_TEXT
from oracle import face_partition, walk_sides

G = GroupSpec((3, 12))


def random_graph(seed, max_edges=12, group=G):
    """Random embedded multigraph (loops and parallel edges allowed) with random signatures."""
    rng = random.Random(seed)
    m = rng.randint(1, max_edges)
    nv = rng.randint(1, m + 1)
    ends = list(range(nv))
    # every vertex gets at least one dart
    slots = ends + [rng.randrange(nv) for _ in range(2 * m - nv)] if nv <= 2 * m else None
    if slots is None:
        nv = 2 * m
        slots = list(range(nv))
    rng.shuffle(slots)
    rot = {v: [] for v in range(nv)}
    for k, v in enumerate(slots):
        rot[v].append(Dart(k // 2, k % 2))
    for v in rot:
        rng.shuffle(rot[v])
    sig = {e: rng.choice((1, -1)) for e in range(m)}
    cur = {e: group.from_index(rng.randrange(group.order)) for e in range(m)}
    return CurrentGraph(group, rot, sig, cur)


def partition_of(g):
    walks = trace_faces(g)
    faces = set()
    total = 0
    for w in walks:
        sides = walk_sides(w, g.signatures)
        assert len(set(sides)) == len(sides), "a walk crosses a side twice"
        faces.add(frozenset(sides))
        total += len(sides)
    return faces, total


def test_k2():
    g = parse(K2_TEXT)
    walks = trace_faces(g)
    assert [len(w) for w in walks] == [2]
    assert classify_edges(walks) == {0: EdgeKind.BIDIRECTIONAL}
    # flipping one end gives the twisted K2; it is the same embedding, so the
    # walk still crosses the edge once in each direction
    twisted = apply_flip(g, 1)
    assert twisted.signatures[0] == -1
    walks = trace_faces(twisted)
    assert [len(w) for w in walks] == [2]
    assert [b for _, b in walks[0]] == [ALTERNATE, NORMAL]
    assert classify_edges(walks) == {0: EdgeKind.BIDIRECTIONAL}


def cycle4(twisted=()):
    rot = {v: (Dart(v, 0), Dart((v - 1) % 4, 1)) for v in range(4)}
    sig = {e: -1 if e in twisted else 1 for e in range(4)}
    return CurrentGraph(G, rot, sig, {e: G.element(0, e + 1) for e in range(4)})


def test_four_cycle():
    walks = trace_faces(cycle4())
    assert sorted(len(w) for w in walks) == [4, 4]
    assert set(classify_edges(walks).values()) == {EdgeKind.BIDIRECTIONAL}
    walks = trace_faces(cycle4(twisted={2}))
    assert [len(w) for w in walks] == [8]
    assert set(classify_edges(walks).values()) == {EdgeKind.UNIDIRECTIONAL}


def test_walk_starts_normal_at_smallest_dart():
    g = cycle4(twisted={2})
    (w,) = trace_faces(g)
    d0, b0 = w.steps[0]
    assert d0 == min(g.darts())
    assert b0 * g.signatures[d0.edge] == NORMAL


def test_log_signs():
    g = parse(K2_TEXT).replace(currents={0: G.element(0, 1)})
    w = FaceWalk(((Dart(0, 0), NORMAL),))
    assert list(face_log(w, g)) == [G.element(0, 1)]
    w = FaceWalk(((Dart(0, 0), ALTERNATE),))
    assert list(face_log(w, g)) == [G.element(0, 11)]
    big = GroupSpec((3, 36))
    h = CurrentGraph(big, g.rotations, g.signatures, {0: big.element(0, 1)})
    assert list(face_log(w, h)) == [big.element(0, 35)]


def test_order_two_suppression():
    g = parse(K2_TEXT)
    (w,) = trace_faces(g)
    assert list(face_log(w, g, suppress=False)) == [G.element(0, 6)] * 2
    assert list(face_log(w, g)) == [G.element(0, 6)]


def test_suppression_only_merges_adjacent_pairs():
    w = FaceWalk(tuple((Dart(k, 0), NORMAL) for k in range(4)))
    rot = {k: (Dart(k, 0), Dart(k, 1)) for k in range(4)}
    six, one = G.element(0, 6), G.element(0, 1)
    g = CurrentGraph(G, rot, {k: 1 for k in range(4)}, {0: six, 1: one, 2: six, 3: one})
    assert len(face_log(w, g)) == 4
    g = CurrentGraph(G, rot, {k: 1 for k in range(4)}, {0: six, 1: one, 2: one, 3: six})
    # the pair wraps around the end of the cyclic sequence
    assert [str(x) for x in face_log(w, g)] == ["(0,1)", "(0,1)", "(0,6)"]


def test_orientability():
    assert surface_orientable(cycle4())
    assert not surface_orientable(cycle4(twisted={1}))
    assert surface_orientable(cycle4(twisted={1, 3}))
    loop = CurrentGraph(G, {0: (Dart(0, 0), Dart(0, 1))}, {0: -1}, {0: G.element(0, 1)})
    assert not surface_orientable(loop)
    assert orienting_flips(loop) is None


def test_make_pure_keeps_faces():
    g = cycle4(twisted={1, 3})
    p = make_pure(g)
    assert p.is_pure()
    assert face_lengths(trace_faces(p)) == face_lengths(trace_faces(g))
    with pytest.raises(ValueError):
        make_pure(cycle4(twisted={1}))


def test_cascade_index_and_classification(cascade_s1):
    walks = trace_faces(cascade_s1)
    assert len(walks) == 1 and len(walks[0]) == 36
    kinds = classify_edges(walks)
    odd = {e for e, c in cascade_s1.currents.items() if not c.is_even}
    assert {e for e, k in kinds.items() if k is EdgeKind.UNIDIRECTIONAL} == odd
    assert not surface_orientable(cascade_s1)
    assert len(face_log(walks[0], cascade_s1)) == 35


@pytest.mark.parametrize("seed", range(200))
def test_matches_oracle(seed):
    g = random_graph(seed)
    faces, total = partition_of(g)
    assert total == 2 * len(g.edges)
    assert faces == face_partition(g.rotations, g.signatures)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 40))
def test_flip_invariance(seed, v):
    g = random_graph(seed)
    f = apply_flip(g, g.vertices[v % len(g.vertices)])
    assert face_lengths(trace_faces(f)) == face_lengths(trace_faces(g))
    assert len(trace_faces(f)) == len(trace_faces(g))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_behaviour_toggles_only_on_twisted_edges(seed):
    g = random_graph(seed)
    for w in trace_faces(g):
        steps = list(w)
        for k, (d, after) in enumerate(steps):
            before = steps[k - 1][1]
            assert after == before * g.signatures[d.edge]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 40))
def test_classification_is_flip_invariant(seed, v):
    # a flip may change which way a face is traced, so only edges with both
    # sides on one face have a direction-independent classification
    g = random_graph(seed)
    f = apply_flip(g, g.vertices[v % len(g.vertices)])

    def own_face_kinds(h):
        walks = trace_faces(h)
        kinds = classify_edges(walks)
        faces = {}
        for k, w in enumerate(walks):
            for d, _ in w:
                faces.setdefault(d.edge, set()).add(k)
        return {e: kinds[e] for e, fs in faces.items() if len(fs) == 1}

    assert own_face_kinds(f) == own_face_kinds(g)
