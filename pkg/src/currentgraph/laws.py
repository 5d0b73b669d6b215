"""Checks of the current-graph properties needed for a triangular derived embedding.

Every law is evaluated independently and reported, so a failing graph comes
back with its whole failure profile rather than the first problem found.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .model import CurrentGraph
from .tracer import (
    EdgeKind,
    FaceWalk,
    Log,
    classify_edges,
    face_log,
    make_pure,
    orienting_flips,
    trace_faces,
)

__all__ = [
    "CASCADE",
    "INDEX2",
    "LawVerdict",
    "LawReport",
    "check_degrees",
    "check_kcl",
    "check_vortices",
    "check_logs",
    "check_parity",
    "check_laws",
    "traced",
]

CASCADE = "cascade"
INDEX2 = "index2"
MODES = (CASCADE, INDEX2)


@dataclass(frozen=True)
class LawVerdict:
    law: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.law} {status}" + (f" {self.witness}" if self.witness else "")


@dataclass
class LawReport:
    mode: str
    verdicts: list[LawVerdict]
    walks: list[FaceWalk] = field(default_factory=list, repr=False)
    logs: list[Log] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __getitem__(self, law: str) -> LawVerdict:
        for v in self.verdicts:
            if v.law == law:
                return v
        raise KeyError(law)

    def failures(self) -> list[LawVerdict]:
        return [v for v in self.verdicts if not v.passed]

    def lines(self) -> list[str]:
        return [v.line() for v in self.verdicts] + [f"OVERALL {'PASS' if self.passed else 'FAIL'}"]

    def __str__(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _verdict(law: str, problems: Sequence[str]) -> LawVerdict:
    if not problems:
        return LawVerdict(law, True)
    extra = f" (+{len(problems) - 1} more)" if len(problems) > 1 else ""
    return LawVerdict(law, False, problems[0] + extra)


def check_degrees(g: CurrentGraph) -> LawVerdict:
    bad = [f"vertex {v} degree {g.degree(v)}" for v in g.vertices if g.degree(v) not in (1, 3)]
    return _verdict("C1", bad)


def check_kcl(g: CurrentGraph) -> LawVerdict:
    bad = []
    for v in g.vertices:
        if g.degree(v) == 3:
            x = g.excess(v)
            if not x.is_identity:
                bad.append(f"vertex {v} excess {x}")
    return _verdict("C2", bad)


def check_vortices(g: CurrentGraph) -> LawVerdict:
    bad = []
    for v in g.vertices:
        if g.degree(v) == 1:
            x = g.excess(v)
            if x.order not in (2, 3):
                bad.append(f"vertex {v} excess {x} of order {x.order}")
    return _verdict("C3", bad)


def traced(g: CurrentGraph, mode: str) -> tuple[CurrentGraph, list[FaceWalk]]:
    """The graph actually traced in ``mode`` and its faces.

    In index-2 mode an orientable graph is first flipped to a pure system so
    that both walks run with one consistent orientation.
    """
    if mode == INDEX2 and orienting_flips(g) is not None:
        g = make_pure(g)
    return g, trace_faces(g)


def check_logs(g: CurrentGraph, walks: Sequence[FaceWalk] | None = None) -> LawVerdict:
    if walks is None:
        walks = trace_faces(g)
    target = Counter(g.group.nonzero())
    bad = []
    for k, w in enumerate(walks):
        log = Counter(face_log(w, g))
        if log == target:
            continue
        zero = log.get(g.group.identity, 0)
        missing = sorted(target - log)
        extra = sorted(log - target)
        if missing:
            bad.append(f"face {k} missing {missing[0]}" + (f" and {len(missing) - 1} more" if len(missing) > 1 else ""))
        elif zero:
            bad.append(f"face {k} logs the identity")
        else:
            bad.append(f"face {k} repeats {extra[0]}")
    return _verdict("C4", bad)


def check_parity(g: CurrentGraph, mode: str, walks: Sequence[FaceWalk] | None = None) -> LawVerdict:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if walks is None:
        g, walks = traced(g, mode)
    try:
        kinds = classify_edges(walks)
    except ValueError as exc:
        return LawVerdict("C5" if mode == CASCADE else "C5'", False, str(exc))

    bad = []
    if mode == CASCADE:
        for e, kind in kinds.items():
            odd = not g.currents[e].is_even
            if odd != (kind is EdgeKind.UNIDIRECTIONAL):
                bad.append(f"edge {e} current {g.currents[e]} is {'odd' if odd else 'even'} but {kind.value}")
        return _verdict("C5", bad)

    if len(walks) != 2:
        return LawVerdict("C5'", False, f"needs exactly 2 faces, found {len(walks)}")
    if orienting_flips(g) is None:
        return LawVerdict("C5'", False, "surface is nonorientable")
    faces_of: dict[int, set[int]] = {}
    for k, w in enumerate(walks):
        for d, _ in w:
            faces_of.setdefault(d.edge, set()).add(k)
    for e, kind in kinds.items():
        if kind is not EdgeKind.BIDIRECTIONAL:
            bad.append(f"edge {e} is unidirectional")
            continue
        odd = not g.currents[e].is_even
        both = len(faces_of[e]) == 2
        if odd != both:
            where = "both faces" if both else f"face [{min(faces_of[e])}] only"
            bad.append(f"edge {e} current {g.currents[e]} is {'odd' if odd else 'even'} but on {where}")
    return _verdict("C5'", bad)


def check_index(walks: Sequence[FaceWalk], mode: str) -> LawVerdict:
    want = 1 if mode == CASCADE else 2
    if len(walks) == want:
        return LawVerdict("INDEX", True)
    return LawVerdict("INDEX", False, f"{len(walks)} faces, expected {want}")


def check_surface(g: CurrentGraph, mode: str) -> LawVerdict:
    orientable = orienting_flips(g) is not None
    if mode == CASCADE and orientable:
        return LawVerdict("SURFACE", False, "orientable; a cascade must be nonorientable")
    if mode == INDEX2 and not orientable:
        return LawVerdict("SURFACE", False, "nonorientable; index 2 needs an orientable surface")
    return LawVerdict("SURFACE", True)


def check_laws(g: CurrentGraph, mode: str | None = None) -> LawReport:
    """Evaluate every law applicable to ``mode`` (default: from ``g.index``)."""
    if mode is None:
        mode = INDEX2 if g.index == 2 else CASCADE
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    tg, walks = traced(g, mode)
    verdicts = [
        check_degrees(g),
        check_kcl(g),
        check_vortices(g),
        check_logs(tg, walks),
        check_parity(tg, mode, walks),
        check_index(walks, mode),
        check_surface(g, mode),
    ]
    logs = [face_log(w, tg) for w in walks]
    return LawReport(mode, verdicts, list(walks), logs)
