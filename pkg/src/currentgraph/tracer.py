"""Face tracing for general rotation systems.

A walk starts in normal behaviour.  Arriving at a vertex in normal behaviour
it leaves by the next dart of the rotation, in alternate behaviour by the
previous one; crossing an edge of signature -1 toggles the behaviour.  Each
arc is logged in the behaviour the walk has once it has crossed the edge:
the current itself when normal, its negative when alternate.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Sequence

from .group import GroupElement
from .model import CurrentGraph, Dart, apply_flip

__all__ = [
    "NORMAL",
    "ALTERNATE",
    "FaceWalk",
    "Log",
    "EdgeKind",
    "trace_rotation_system",
    "trace_faces",
    "classify_edges",
    "face_log",
    "surface_orientable",
    "orienting_flips",
    "make_pure",
]

NORMAL = 1
ALTERNATE = -1


class EdgeKind(str, Enum):
    BIDIRECTIONAL = "bidirectional"
    UNIDIRECTIONAL = "unidirectional"


@dataclass(frozen=True)
class FaceWalk:
    """Closed walk; ``steps[k] = (dart, behaviour after crossing that dart's edge)``."""

    steps: tuple[tuple[Dart, int], ...]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[tuple[Dart, int]]:
        return iter(self.steps)

    @property
    def darts(self) -> list[Dart]:
        return [d for d, _ in self.steps]


@dataclass(frozen=True)
class Log:
    """Cyclic sequence of signed currents, with the edge each entry came from."""

    elements: tuple[GroupElement, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __getitem__(self, k):
        return self.elements[k]

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.elements)


def trace_rotation_system(
    rotations: Mapping[object, Sequence[Dart]],
    signatures: Mapping[int, int],
) -> list[FaceWalk]:
    """Trace every face of a general rotation system given by darts.

    Walks are started, in normal behaviour, at the smallest dart whose side
    has not been covered yet, so the output order is deterministic.
    """
    where: dict[Dart, tuple[Sequence[Dart], int]] = {}
    for rot in rotations.values():
        for pos, d in enumerate(rot):
            where[d] = (rot, pos)

    covered: set[tuple[Dart, int]] = set()
    walks: list[FaceWalk] = []
    for start in sorted(where):
        if (start, NORMAL) in covered:
            continue
        steps = []
        d, b = start, NORMAL
        while True:
            sig = signatures[d.edge]
            after = b * sig
            # a side is identified by both of the states that traverse it
            covered.add((d, b))
            covered.add((d.reverse(), -after))
            steps.append((d, after))
            rot, pos = where[d.reverse()]
            d, b = rot[(pos + after) % len(rot)], after
            if (d, b) == (start, NORMAL):
                break
        walks.append(FaceWalk(tuple(steps)))
    return walks


def trace_faces(g: CurrentGraph) -> list[FaceWalk]:
    return trace_rotation_system(g.rotations, g.signatures)


def classify_edges(walks: Sequence[FaceWalk]) -> dict[int, EdgeKind]:
    """Opposite darts on the two traversals: bidirectional; same dart twice: unidirectional."""
    seen: dict[int, list[Dart]] = {}
    for w in walks:
        for d, _ in w:
            seen.setdefault(d.edge, []).append(d)
    kinds = {}
    for e, darts in sorted(seen.items()):
        if len(darts) != 2:
            raise ValueError(f"edge {e} traversed {len(darts)} times")
        kinds[e] = EdgeKind.BIDIRECTIONAL if darts[0] != darts[1] else EdgeKind.UNIDIRECTIONAL
    return kinds


def face_log(walk: FaceWalk, g: CurrentGraph, suppress: bool = True) -> Log:
    """Signed currents along ``walk``.

    With ``suppress`` two cyclically consecutive copies of an order-2 element
    are merged, which collapses the digons an order-2 vortex would create.
    """
    elems = [g.current(d) if b == NORMAL else -g.current(d) for d, b in walk]
    edges = [d.edge for d, _ in walk]
    n = len(elems)
    if suppress and n > 1:
        def doubled(k):
            return elems[k].order == 2 and elems[k - 1] == elems[k]

        # begin the scan where no doubled pair straddles the start
        start = next((k for k in range(n) if not doubled(k)), 0)
        keep = []
        k = 0
        while k < n:
            i = (start + k) % n
            keep.append(i)
            j = (i + 1) % n
            k += 2 if k + 1 < n and elems[i].order == 2 and elems[j] == elems[i] else 1
        keep.sort()
        elems = [elems[i] for i in keep]
        edges = [edges[i] for i in keep]
    return Log(tuple(elems), tuple(edges))


def orienting_flips(g: CurrentGraph) -> set[int] | None:
    """Vertices to flip so that every signature becomes +1, or None if impossible.

    Equivalent to every cycle having signature product +1.
    """
    side: dict[int, int] = {}
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for e, sig in g.signatures.items():
        u, v = g.endpoints(e)
        if u == v:
            if sig == -1:
                return None
            continue
        adj[u].append((v, sig))
        adj[v].append((u, sig))
    for root in g.vertices:
        if root in side:
            continue
        side[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for v, sig in adj[u]:
                want = side[u] * sig
                if v not in side:
                    side[v] = want
                    stack.append(v)
                elif side[v] != want:
                    return None
    return {v for v, s in side.items() if s == -1}


def surface_orientable(g: CurrentGraph) -> bool:
    return orienting_flips(g) is not None


def make_pure(g: CurrentGraph) -> CurrentGraph:
    """Flip-equivalent graph with all signatures +1; raises if nonorientable."""
    flips = orienting_flips(g)
    if flips is None:
        raise ValueError("the embedding is nonorientable; no pure equivalent exists")
    for v in sorted(flips):
        g = apply_flip(g, v)
    return g


def face_lengths(walks: Sequence[FaceWalk]) -> Counter:
    return Counter(len(w) for w in walks)
