"""Derived embeddings of complete graphs generated by index 1 and index 2 current graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping

from .group import GroupElement, GroupSpec
from .laws import CASCADE, INDEX2, check_laws
from .model import CurrentGraph
from .tracer import EdgeKind, classify_edges

__all__ = [
    "DeriveError",
    "RotationSystem",
    "derive_index1",
    "derive_index2",
    "normalize_to_pure",
    "int_name",
    "format_rotation_system",
]


class DeriveError(ValueError):
    pass


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic neighbour order at each vertex; ``signatures`` lists the -1 pairs (None = pure)."""

    rotation: Mapping[Hashable, tuple]
    signatures: Mapping[frozenset, int] | None = None

    @property
    def n(self) -> int:
        return len(self.rotation)

    @property
    def is_pure(self) -> bool:
        return not self.signatures or all(s == 1 for s in self.signatures.values())

    def signature(self, u, v) -> int:
        if not self.signatures:
            return 1
        return self.signatures.get(frozenset((u, v)), 1)


def _require(g: CurrentGraph, mode: str):
    report = check_laws(g, mode)
    if not report.passed:
        failed = "; ".join(v.line() for v in report.failures())
        raise DeriveError(f"current graph fails {mode} laws: {failed}")
    return report


def derive_index1(g: CurrentGraph) -> RotationSystem:
    """Rotation at ``i`` is the face log shifted by ``i``.

    A derived edge gets signature -1 exactly when the current-graph edge its
    log entry came from is unidirectional.
    """
    report = _require(g, CASCADE)
    log = report.logs[0]
    kinds = classify_edges(report.walks)
    uni = [kinds[e] is EdgeKind.UNIDIRECTIONAL for e in log.edges]
    rotation = {}
    signatures = {}
    for i in g.group.elements():
        row = tuple(i + x for x in log)
        rotation[i] = row
        for j, flag in zip(row, uni):
            if flag:
                signatures[frozenset((i, j))] = -1
    return RotationSystem(rotation, signatures)


def normalize_to_pure(rs: RotationSystem) -> RotationSystem:
    """Flip every odd vertex; valid only when the -1 edges are exactly the even-odd edges."""
    if rs.is_pure:
        return RotationSystem(dict(rs.rotation), None)
    for u, row in rs.rotation.items():
        for v in row:
            mixed = u.is_even != v.is_even
            if rs.signature(u, v) == (1 if mixed else -1):
                raise DeriveError(
                    f"edge {u}-{v} has signature {rs.signature(u, v):+d}; "
                    "the -1 edges do not form the even/odd bipartite pattern"
                )
    rotation = {u: (row if u.is_even else tuple(reversed(row))) for u, row in rs.rotation.items()}
    return RotationSystem(rotation, None)


def derive_index2(g: CurrentGraph, swap: bool = False) -> RotationSystem:
    """Even vertices follow the log of face [0], odd vertices that of face [1].

    Face [0] is the walk traced first (from the smallest dart); ``swap``
    exchanges the two labels.
    """
    report = _require(g, INDEX2)
    log0, log1 = report.logs
    if swap:
        log0, log1 = log1, log0
    rotation = {}
    for i in g.group.elements():
        src = log0 if i.is_even else log1
        rotation[i] = tuple(i + x for x in src)
    return RotationSystem(rotation, None)


def int_name(x: GroupElement | int) -> int:
    """Mixed-radix integer with the first coordinate fastest: (a,b) -> a + 3b in Z3 x Z12s."""
    if isinstance(x, int):
        return x
    code, scale = 0, 1
    for r, m in zip(x.residues, x.spec.moduli):
        code += r * scale
        scale *= m
    return code


def format_rotation_system(rs: RotationSystem, names: str = "element") -> str:
    """One line per vertex, ``i : j1 j2 ...``, vertices ascending."""
    if names == "int":
        name = int_name
        order = sorted(rs.rotation, key=int_name)
    else:
        name = str
        order = sorted(rs.rotation)
    lines = [f"{name(v)} : " + " ".join(str(name(u)) for u in rs.rotation[v]) for v in order]
    return "\n".join(lines) + "\n"


def parse_rotation_system(text: str, group: GroupSpec | None = None) -> RotationSystem:
    """Inverse of :func:`format_rotation_system` for integer or element names."""
    rotation = {}

    def conv(tok: str):
        if tok.startswith("("):
            if group is None:
                raise ValueError("element names need a group")
            return group.parse_element(tok)
        return int(tok)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'i : j1 j2 ...'")
        head, tail = line.split(":", 1)
        v = conv(head.strip())
        if v in rotation:
            raise ValueError(f"line {lineno}: vertex {head.strip()} listed twice")
        rotation[v] = tuple(conv(t) for t in tail.split())
    return RotationSystem(rotation, None)
