"""Search driver: scaffold + constraints -> verified solutions."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..laws import CASCADE, INDEX2, MODES
from ..model import CurrentGraph
from .scaffold import LadderScaffold, ScaffoldError, edges_required, end_shapes
from .solver import BUDGET, COMPLETE, Infeasible, search

__all__ = ["SearchConstraints", "SearchOutcome", "run_search", "default_shape"]

ENGINES = ("backtrack", "sat")


@dataclass(frozen=True)
class SearchConstraints:
    mode: str
    budget: float | None = None
    limit: int | None = 1
    symmetry: bool = True
    even_only: bool = False
    seed: int | None = None
    engine: str = "backtrack"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be positive")

    def vortex_profile(self, s: int) -> dict[int, int]:
        """Order -> number of degree-1 vertices: one order-2 vortex per face, the rest order 3."""
        faces = 1 if self.mode == CASCADE else 2
        leaves = 3 * faces
        return {2: faces, 3: leaves - faces}


@dataclass
class SearchOutcome:
    solutions: list[CurrentGraph]
    status: str
    nodes: int
    seconds: float
    reason: str = ""

    @property
    def found(self) -> bool:
        return bool(self.solutions)


def default_shape(s: int, mode: str, rungs: int) -> str:
    """First catalog shape of the right mode whose edge count fits ``rungs``."""
    need = edges_required(s, mode)
    for name, shape in sorted(end_shapes().items()):
        if shape.mode == mode and shape.edge_count + 3 * rungs == need:
            return name
    raise ScaffoldError(f"no {mode} end shape in the catalog fits s={s} with {rungs} rungs")


def run_search(scaffold: LadderScaffold, constraints: SearchConstraints) -> SearchOutcome:
    if constraints.mode != scaffold.mode:
        raise ValueError(f"constraints are for {constraints.mode}, scaffold is {scaffold.mode}")
    leaves = sum(1 for rot in scaffold.rotations.values() if len(rot) == 1)
    want = sum(constraints.vortex_profile(scaffold.s).values())
    if leaves != want:
        return SearchOutcome([], COMPLETE, 0, 0.0, f"scaffold has {leaves} degree-1 vertices, {constraints.mode} needs {want}")
    parity = {e: False for e in scaffold.signatures} if constraints.even_only else None
    sk = scaffold.skeleton(parity)
    start = time.monotonic()
    try:
        if constraints.engine == "sat":
            from .sat import sat_search

            res = sat_search(sk, budget=constraints.budget, limit=constraints.limit)
        else:
            res = search(
                sk,
                budget=constraints.budget,
                limit=constraints.limit,
                symmetry=constraints.symmetry,
                seed=constraints.seed,
            )
    except Infeasible as exc:
        return SearchOutcome([], COMPLETE, 0, time.monotonic() - start, str(exc))
    reason = "time budget exhausted" if res.status == BUDGET else ""
    if res.status == COMPLETE and not res.solutions:
        reason = "search space exhausted"
    return SearchOutcome(res.solutions, res.status, res.nodes, res.seconds, reason)
