"""Ladder scaffolds: end shapes with two rails, subdivided by a run of rungs.

An end shape is a closed skeleton (rotations and signatures, no currents)
with two distinguished edges, the top and bottom rails.  Inserting ``r``
rungs subdivides each rail into ``r + 1`` segments and joins the ``j``-th
new top vertex to the ``j``-th new bottom vertex.  With ``r = 0`` the
scaffold is the end shape itself.

Rung ``j`` (1-based) carries ``(0, start + j - 1)``; rungs alternate in
direction and the rail vertices are oriented in a checkerboard.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Mapping

from ..group import GroupElement, GroupSpec
from ..laws import CASCADE, INDEX2, MODES
from ..model import CurrentGraph, Dart
from .solver import Skeleton

__all__ = [
    "EndShape",
    "LadderScaffold",
    "ScaffoldError",
    "build_scaffold",
    "edges_required",
    "end_shapes",
    "get_end_shape",
]


class ScaffoldError(ValueError):
    """Parameters that no scaffold can satisfy."""


@dataclass(frozen=True)
class EndShape:
    name: str
    mode: str
    rotations: Mapping[int, tuple[Dart, ...]]
    signatures: Mapping[int, int]
    rails: tuple[int, int]
    note: str = ""

    @property
    def edge_count(self) -> int:
        return len(self.signatures)

    def degree_profile(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for rot in self.rotations.values():
            out[len(rot)] = out.get(len(rot), 0) + 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "note": self.note,
            "rails": list(self.rails),
            "rotations": {str(v): [str(d) for d in rot] for v, rot in sorted(self.rotations.items())},
            "signatures": {str(e): s for e, s in sorted(self.signatures.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EndShape":
        def dart(tok: str) -> Dart:
            e, end = tok.lstrip("e").split(".")
            return Dart(int(e), int(end))

        rotations = {int(v): tuple(dart(t) for t in rot) for v, rot in data["rotations"].items()}
        signatures = {int(e): int(s) for e, s in data["signatures"].items()}
        top, bottom = data["rails"]
        return cls(data["name"], data["mode"], rotations, signatures, (int(top), int(bottom)), data.get("note", ""))

    @classmethod
    def from_graph(cls, name: str, g: CurrentGraph, rails: tuple[int, int], note: str = "") -> "EndShape":
        mode = INDEX2 if g.index == 2 else CASCADE
        return cls(name, mode, dict(g.rotations), dict(g.signatures), rails, note)


@lru_cache(maxsize=None)
def end_shapes() -> dict[str, EndShape]:
    """The bundled catalog, keyed by name."""
    text = resources.files("currentgraph.data").joinpath("shapes.json").read_text()
    return {d["name"]: EndShape.from_json(d) for d in json.loads(text)}


def get_end_shape(name: str) -> EndShape:
    try:
        return end_shapes()[name]
    except KeyError:
        known = ", ".join(sorted(end_shapes()))
        raise ScaffoldError(f"unknown end shape {name!r}; known: {known}") from None


def edges_required(s: int, mode: str) -> int:
    """Edge count forced by face lengths: one face of 36s steps, or two of 36s each."""
    if s < 1:
        raise ScaffoldError(f"s must be at least 1, got {s}")
    if mode == CASCADE:
        return 18 * s
    if mode == INDEX2:
        return 36 * s
    raise ScaffoldError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class LadderScaffold:
    s: int
    rung_count: int
    shape: EndShape
    group: GroupSpec
    rotations: Mapping[int, tuple[Dart, ...]]
    signatures: Mapping[int, int]
    top_rail: tuple[int, ...]
    bottom_rail: tuple[int, ...]
    rungs: tuple[int, ...]
    rung_currents: Mapping[int, GroupElement]
    clockwise: Mapping[int, bool] = field(default_factory=dict)
    pinned: bool = True

    @property
    def mode(self) -> str:
        return self.shape.mode

    @property
    def edge_count(self) -> int:
        return len(self.signatures)

    def degree_profile(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for rot in self.rotations.values():
            out[len(rot)] = out.get(len(rot), 0) + 1
        return dict(sorted(out.items()))

    def vertical(self) -> frozenset:
        """Nonzero currents with first component 0."""
        return frozenset(x for x in self.group.nonzero() if x.residues[0] == 0)

    def skeleton(self, parity: Mapping[int, bool] | None = None) -> Skeleton:
        return Skeleton(
            self.group,
            dict(self.rotations),
            dict(self.signatures),
            self.mode,
            fixed=dict(self.rung_currents) if self.pinned else {},
            parity=dict(parity or {}),
            allowed={} if self.pinned else {r: self.vertical() for r in self.rungs},
            meta={"s": self.s, "rungs": self.rung_count, "shape": self.shape.name},
        )


def build_scaffold(s: int, rung_count: int, end_shape: EndShape | str, start: int = 1,
                   checker: int = 0, first_down: bool = True, pinned: bool = True,
                   antiparallel: bool = False) -> LadderScaffold:
    """Insert ``rung_count`` rungs into the rails of ``end_shape`` for Z3 x Z12s.

    ``start`` is the second component of the first rung current; ``checker``
    picks which of the two checkerboard colourings the rails get, and
    ``first_down`` the direction of rung 1.  With ``pinned=False`` the rung
    currents are left to the search, restricted to first component 0.
    ``antiparallel`` runs the bottom rail against the direction of its edge.
    """
    shape = get_end_shape(end_shape) if isinstance(end_shape, str) else end_shape
    if rung_count < 0:
        raise ScaffoldError(f"rung count must be non-negative, got {rung_count}")
    if shape.mode not in MODES:
        raise ScaffoldError(f"unknown mode {shape.mode!r}")
    if shape.mode == CASCADE and s % 2 == 0:
        raise ScaffoldError(f"cascade scaffolds are for odd s; use index2 for s={s}")
    need = edges_required(s, shape.mode)
    have = shape.edge_count + 3 * rung_count
    if have != need:
        raise ScaffoldError(
            f"handshake: shape {shape.name} with {rung_count} rungs has {have} edges, "
            f"{shape.mode} over Z3xZ{12 * s} needs {need}"
        )
    group = GroupSpec.z3_z12s(s)
    modulus = 12 * s
    run = [(start + j) % modulus for j in range(rung_count)]
    if pinned and any(k == 0 or 2 * k == modulus for k in run):
        raise ScaffoldError(f"rung run from {start} of length {rung_count} hits 0 or the order-2 element")

    rotations = {v: list(rot) for v, rot in shape.rotations.items()}
    signatures = dict(shape.signatures)
    next_v = max(rotations, default=-1) + 1
    next_e = max(signatures, default=-1) + 1

    def where(d: Dart):
        for v, rot in rotations.items():
            if d in rot:
                return v, rot.index(d)
        raise ScaffoldError(f"dart {d} missing from shape {shape.name}")

    def subdivide(e: int) -> tuple[list[int], list[int]]:
        """Split rail ``e`` into ``rung_count + 1`` segments; returns (vertices, segments)."""
        nonlocal next_v, next_e
        verts = list(range(next_v, next_v + rung_count))
        next_v += rung_count
        segs = [e] + list(range(next_e, next_e + rung_count))
        next_e += rung_count
        if not rung_count:
            return verts, segs
        # the far end of e moves onto the last new segment
        v1, pos1 = where(Dart(e, 1))
        rotations[v1][pos1] = Dart(segs[-1], 1)
        for k in range(1, rung_count + 1):
            signatures[segs[k]] = 1
        return verts, segs

    top_v, top_e = subdivide(shape.rails[0])
    bot_v, bot_e = subdivide(shape.rails[1])
    rungs = list(range(next_e, next_e + rung_count))
    rung_currents: dict[int, GroupElement] = {}
    clockwise: dict[int, bool] = {}
    for j in range(rung_count):
        k = rung_count - 1 - j if antiparallel else j
        u, v, r = top_v[j], bot_v[k], rungs[j]
        signatures[r] = 1
        down = (j % 2 == 0) == first_down
        # dart r.0 leaves u when the rung points down
        ru, rv = (Dart(r, 0), Dart(r, 1)) if down else (Dart(r, 1), Dart(r, 0))
        left_u, right_u = Dart(top_e[j], 1), Dart(top_e[j + 1], 0)
        left_v, right_v = Dart(bot_e[k], 1), Dart(bot_e[k + 1], 0)
        if antiparallel:
            left_v, right_v = right_v, left_v
        cw = (j + checker) % 2 == 0
        # clockwise around a top vertex: left, right, down; around a bottom vertex: left, up, right
        rotations[u] = [left_u, right_u, ru] if cw else [left_u, ru, right_u]
        rotations[v] = [left_v, rv, right_v] if not cw else [left_v, right_v, rv]
        clockwise[u], clockwise[v] = cw, not cw
        rung_currents[r] = group.element(0, run[j])

    return LadderScaffold(
        s,
        rung_count,
        shape,
        group,
        {v: tuple(rot) for v, rot in rotations.items()},
        signatures,
        tuple(top_e),
        tuple(bot_e),
        tuple(rungs),
        rung_currents if pinned else {},
        clockwise,
        pinned,
    )
