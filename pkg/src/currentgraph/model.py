"""Embedded, arc-labelled current graphs and their line-based text format.

A graph is stored as a general rotation system: every vertex carries the
cyclic order of the darts leaving it, every edge a signature of +1 or -1.
Dart ``(e, 0)`` is the arc leaving the vertex that holds end 0 of edge ``e``.
Only the current on that dart is stored; the opposite arc is derived from the
signature as ``current(e,1) = -sig(e) * current(e,0)``, so the relation
between the two arcs of an edge cannot drift out of sync.

File format::

    group 3 12              # or: group Z3xZ12
    index 1                 # optional, 1 or 2
    v 1 : e1.0 e2.0 e3.1    # explicit rotation
    v 2 cw e1.1 e4.0 e5.0   # drawn neighbour order, clockwise vertex
    v 3 ccw e2.1 e4.1 e6.0  # counterclockwise: the listed order is reversed
    e 1 sig +1 cur (0,1)    # current on dart e1.0; optional "rev (a,b)" for e1.1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .group import GroupElement, GroupError, GroupSpec, parse_group

__all__ = [
    "Dart",
    "CurrentGraph",
    "ModelError",
    "ParseError",
    "parse",
    "serialize",
    "apply_flip",
    "load",
    "dump",
]


class ModelError(ValueError):
    """Structurally invalid current graph."""


class ParseError(ModelError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class Dart(NamedTuple):
    edge: int
    end: int

    def reverse(self) -> "Dart":
        return Dart(self.edge, 1 - self.end)

    def __str__(self) -> str:
        return f"e{self.edge}.{self.end}"


def _canonical_cycle(seq: tuple) -> tuple:
    if not seq:
        return seq
    i = seq.index(min(seq))
    return seq[i:] + seq[:i]


@dataclass(frozen=True, eq=True)
class CurrentGraph:
    group: GroupSpec
    rotations: Mapping[int, tuple[Dart, ...]]
    signatures: Mapping[int, int]
    currents: Mapping[int, GroupElement]
    index: int | None = None
    _where: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        rotations = {int(v): _canonical_cycle(tuple(Dart(*d) for d in rot))
                     for v, rot in self.rotations.items()}
        object.__setattr__(self, "rotations", dict(sorted(rotations.items())))
        object.__setattr__(self, "signatures", dict(sorted(self.signatures.items())))
        object.__setattr__(self, "currents", dict(sorted(self.currents.items())))
        self._validate()

    def _validate(self) -> None:
        where: dict[Dart, tuple[int, int]] = {}
        for v, rot in self.rotations.items():
            if not rot:
                raise ModelError(f"vertex {v} has empty rotation")
            for pos, d in enumerate(rot):
                if d.end not in (0, 1):
                    raise ModelError(f"dart {d} has end other than 0/1")
                if d in where:
                    raise ModelError(f"duplicate dart {d} at vertices {where[d][0]} and {v}")
                where[d] = (v, pos)
        edges = set(self.signatures)
        if set(self.currents) != edges:
            missing = sorted(edges ^ set(self.currents))
            raise ModelError(f"edges without both signature and current: {missing}")
        for e, sig in self.signatures.items():
            if sig not in (1, -1):
                raise ModelError(f"edge {e} has signature {sig}")
            for end in (0, 1):
                if Dart(e, end) not in where:
                    raise ModelError(f"dangling dart {Dart(e, end)}: not placed at any vertex")
            if self.currents[e].spec != self.group:
                raise ModelError(f"current on edge {e} is not in {self.group}")
        for d in where:
            if d.edge not in edges:
                raise ModelError(f"dangling dart {d}: edge {d.edge} is not declared")
        object.__setattr__(self, "_where", where)

    # -- structure ------------------------------------------------------
    @property
    def vertices(self) -> list[int]:
        return list(self.rotations)

    @property
    def edges(self) -> list[int]:
        return list(self.signatures)

    def darts(self) -> list[Dart]:
        return sorted(self._where)

    def vertex_of(self, d: Dart) -> int:
        return self._where[d][0]

    def position(self, d: Dart) -> int:
        return self._where[d][1]

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.vertex_of(Dart(e, 0)), self.vertex_of(Dart(e, 1))

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def next_dart(self, d: Dart, step: int = 1) -> Dart:
        v, pos = self._where[d]
        rot = self.rotations[v]
        return rot[(pos + step) % len(rot)]

    def current(self, d: Dart) -> GroupElement:
        """Current on the arc leaving the vertex that holds dart ``d``."""
        c = self.currents[d.edge]
        if d.end == 0:
            return c
        return -c if self.signatures[d.edge] == 1 else c

    def excess(self, v: int) -> GroupElement:
        """Sum of the currents on the arcs entering ``v``."""
        total = self.group.identity
        for d in self.rotations[v]:
            total = total + self.current(d.reverse())
        return total

    # -- edits (all return new graphs) ------------------------------------
    def replace(self, **changes) -> "CurrentGraph":
        data = dict(group=self.group, rotations=self.rotations,
                    signatures=self.signatures, currents=self.currents, index=self.index)
        data.update(changes)
        return CurrentGraph(**data)

    def with_current(self, e: int, value: GroupElement) -> "CurrentGraph":
        currents = dict(self.currents)
        currents[e] = value
        return self.replace(currents=currents)

    def flip(self, v: int) -> "CurrentGraph":
        return apply_flip(self, v)

    def negated(self) -> "CurrentGraph":
        return self.replace(currents={e: -c for e, c in self.currents.items()})

    def is_pure(self) -> bool:
        return all(sig == 1 for sig in self.signatures.values())

    def __str__(self) -> str:
        return serialize(self)


def apply_flip(g: CurrentGraph, v: int) -> CurrentGraph:
    """Reverse the rotation at ``v`` and toggle its incident signatures.

    The arcs entering ``v`` change sign, the arcs leaving it keep theirs; this
    keeps every face log and every excess order unchanged.  A loop at ``v`` has
    its signature toggled twice and both of its arcs negated.
    """
    if v not in g.rotations:
        raise ModelError(f"unknown vertex {v}")
    rot = g.rotations[v]
    signatures = dict(g.signatures)
    currents = dict(g.currents)
    for d in rot:
        signatures[d.edge] = -signatures[d.edge]
        # the arc entering v through this end is the dart at the far end
        if d.end == 1:
            currents[d.edge] = -currents[d.edge]
    rotations = dict(g.rotations)
    rotations[v] = tuple(reversed(rot))
    return g.replace(rotations=rotations, signatures=signatures, currents=currents)


# -- text format ----------------------------------------------------------

_DART_RE = re.compile(r"^e(\d+)\.([01])$")


def _format_sig(sig: int) -> str:
    return "+1" if sig == 1 else "-1"


def serialize(g: CurrentGraph) -> str:
    lines = ["group " + " ".join(str(m) for m in g.group.moduli)]
    if g.index is not None:
        lines.append(f"index {g.index}")
    for v, rot in g.rotations.items():
        lines.append(f"v {v} : " + " ".join(str(d) for d in rot))
    for e, sig in g.signatures.items():
        lines.append(f"e {e} sig {_format_sig(sig)} cur {g.currents[e]}")
    return "\n".join(lines) + "\n"


def _tokens(line: str) -> list[tuple[str, int]]:
    """Split on whitespace outside parentheses, keeping 1-based columns."""
    out: list[tuple[str, int]] = []
    i, n = 0, len(line)
    while i < n:
        if line[i].isspace():
            i += 1
            continue
        start = i
        depth = 0
        while i < n and (depth or not line[i].isspace()):
            if line[i] == "(":
                depth += 1
            elif line[i] == ")":
                depth -= 1
            i += 1
        out.append((line[start:i], start + 1))
    return out


def parse(text: str) -> CurrentGraph:
    group: GroupSpec | None = None
    index = None
    rotations: dict[int, tuple[Dart, ...]] = {}
    signatures: dict[int, int] = {}
    currents: dict[int, GroupElement] = {}
    seen: dict[Dart, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        key, col = toks[0]

        def fail(msg: str, column: int = col):
            raise ParseError(msg, lineno, column)

        if key == "group":
            if group is not None:
                fail("group declared twice")
            try:
                group = parse_group(" ".join(t for t, _ in toks[1:]))
            except GroupError as exc:
                fail(str(exc), toks[1][1] if len(toks) > 1 else col)
            continue
        if group is None:
            fail("the first statement must be 'group'")
        if key == "index":
            if len(toks) != 2 or toks[1][0] not in ("1", "2"):
                fail("expected 'index 1' or 'index 2'")
            index = int(toks[1][0])
        elif key == "v":
            if len(toks) < 4:
                fail("expected 'v <id> :|cw|ccw <darts...>'")
            vid, vcol = toks[1]
            if not vid.lstrip("-").isdigit():
                fail(f"bad vertex id {vid!r}", vcol)
            v = int(vid)
            if v in rotations:
                fail(f"vertex {v} declared twice", vcol)
            mode, mcol = toks[2]
            if mode not in (":", "cw", "ccw"):
                fail(f"expected ':', 'cw' or 'ccw', got {mode!r}", mcol)
            darts = []
            for tok, tcol in toks[3:]:
                m = _DART_RE.match(tok)
                if not m:
                    fail(f"bad dart {tok!r}", tcol)
                d = Dart(int(m.group(1)), int(m.group(2)))
                if d in seen:
                    fail(f"duplicate dart {d} (already at vertex {seen[d]})", tcol)
                seen[d] = v
                darts.append(d)
            if mode == "ccw":
                darts.reverse()
            rotations[v] = tuple(darts)
        elif key == "e":
            fields = {t: (toks[i + 1] if i + 1 < len(toks) else None)
                      for i, (t, _) in enumerate(toks) if t in ("sig", "cur", "rev")}
            if len(toks) < 2 or not toks[1][0].isdigit():
                fail("expected 'e <id> sig <+1|-1> cur (a,b)'")
            e = int(toks[1][0])
            if e in signatures:
                fail(f"edge {e} declared twice", toks[1][1])
            if fields.get("sig") is None or fields.get("cur") is None:
                fail(f"edge {e} needs both 'sig' and 'cur'")
            sig_tok, scol = fields["sig"]
            if sig_tok not in ("+1", "-1", "1"):
                fail(f"bad signature {sig_tok!r}", scol)
            sig = -1 if sig_tok == "-1" else 1
            cur_tok, ccol = fields["cur"]
            try:
                cur = group.parse_element(cur_tok)
            except GroupError as exc:
                fail(f"unknown group element: {exc}", ccol)
            if fields.get("rev") is not None:
                rev_tok, rcol = fields["rev"]
                try:
                    rev = group.parse_element(rev_tok)
                except GroupError as exc:
                    fail(f"unknown group element: {exc}", rcol)
                expected = -cur if sig == 1 else cur
                if rev != expected:
                    fail(f"current/signature inconsistency on edge {e}: "
                         f"sig {sig_tok} with cur {cur} requires rev {expected}, got {rev}", rcol)
            signatures[e] = sig
            currents[e] = cur
        else:
            fail(f"unknown statement {key!r}")

    if group is None:
        raise ParseError("missing 'group' statement", 1, 1)
    try:
        return CurrentGraph(group, rotations, signatures, currents, index)
    except ModelError as exc:
        raise ParseError(str(exc)) from None


def load(path) -> CurrentGraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(g: CurrentGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(g))


def from_edges(group: GroupSpec, rotations: Mapping[int, Iterable[Dart]],
               edges: Mapping[int, tuple[int, GroupElement]], index: int | None = None) -> CurrentGraph:
    """Build a graph from ``{edge: (signature, current)}``."""
    return CurrentGraph(
        group,
        {v: tuple(r) for v, r in rotations.items()},
        {e: s for e, (s, _) in edges.items()},
        {e: c for e, (_, c) in edges.items()},
        index,
    )
