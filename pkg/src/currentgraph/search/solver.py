"""Backtracking search for current assignments on an embedded skeleton.

The embedding (rotations and signatures) is fixed up front, so the faces, the
edge classification and therefore the required parity of every current are
known before any current is chosen.  What remains is a labelling problem:

* Kirchhoff's law at each trivalent vertex, used to force the last free
  current at a vertex as soon as the other two are known;
* the vortex edges take currents of order 2 or 3;
* within each face every signed current appears at most once.

Every solution is re-checked with the law checker before it is emitted.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from ..group import GroupElement, GroupSpec
from ..laws import CASCADE, INDEX2, check_laws
from ..model import CurrentGraph, Dart
from ..tracer import EdgeKind, classify_edges, trace_rotation_system

__all__ = [
    "Skeleton",
    "SearchResult",
    "BudgetExhausted",
    "search",
    "iter_solutions",
    "prune_partial",
    "Infeasible",
]

COMPLETE = "exhausted"
BUDGET = "budget"
FOUND = "found"


class Infeasible(ValueError):
    """The skeleton's embedding cannot carry a valid assignment in this mode."""


class BudgetExhausted(Exception):
    pass


@dataclass
class Skeleton:
    """An embedded graph awaiting currents; ``fixed`` pins some edges."""

    group: GroupSpec
    rotations: Mapping[int, tuple[Dart, ...]]
    signatures: Mapping[int, int]
    mode: str
    fixed: dict[int, GroupElement] = field(default_factory=dict)
    # optional parity override per edge: True = odd current required
    parity: dict[int, bool] = field(default_factory=dict)
    # optional restriction of an edge to a set of currents (dart e.0)
    allowed: dict[int, frozenset] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def index(self) -> int:
        return 1 if self.mode == CASCADE else 2

    def complete(self, currents: Mapping[int, GroupElement]) -> CurrentGraph:
        return CurrentGraph(self.group, self.rotations, self.signatures, dict(currents), self.index)


@dataclass
class SearchResult:
    solutions: list[CurrentGraph]
    status: str
    nodes: int
    seconds: float

    @property
    def found(self) -> bool:
        return bool(self.solutions)


class _Problem:
    """Integer-coded view of a skeleton used by the backtracking core."""

    def __init__(self, sk: Skeleton):
        self.sk = sk
        tab = sk.group.tables
        self.tab = tab
        self.n = tab.size
        walks = trace_rotation_system(sk.rotations, sk.signatures)
        want = sk.index
        if len(walks) != want:
            raise Infeasible(f"embedding has {len(walks)} faces, mode {sk.mode} needs {want}")
        kinds = classify_edges(walks)
        self.edges = sorted(sk.signatures)
        eidx = {e: k for k, e in enumerate(self.edges)}
        self.eidx = eidx
        m = len(self.edges)

        where = {}
        for v, rot in sk.rotations.items():
            for d in rot:
                where[d] = v
        deg = {v: len(r) for v, r in sk.rotations.items()}
        self.leaf = [False] * m
        for v, rot in sk.rotations.items():
            if len(rot) == 1:
                self.leaf[eidx[rot[0].edge]] = True

        faces_of = [set() for _ in range(m)]
        self.trav: list[list[tuple[int, int]]] = [[] for _ in range(m)]
        for f, w in enumerate(walks):
            for d, b in w:
                k = eidx[d.edge]
                sign = b if d.end == 0 else -b * sk.signatures[d.edge]
                self.trav[k].append((f, sign))
                faces_of[k].add(f)
        for f, w in enumerate(walks):
            raw = len(w)
            if raw not in (self.n - 1, self.n):
                raise Infeasible(f"face {f} has length {raw}; a complete log needs {self.n - 1} or {self.n}")
        self.face_raw = [len(w) for w in walks]
        self.walks = walks
        self.nfaces = len(walks)

        # required parity of each edge
        self.odd: list[bool] = []
        for k, e in enumerate(self.edges):
            if e in sk.parity:
                self.odd.append(sk.parity[e])
            elif sk.mode == CASCADE:
                self.odd.append(kinds[e] is EdgeKind.UNIDIRECTIONAL)
            else:
                if kinds[e] is not EdgeKind.BIDIRECTIONAL:
                    raise Infeasible(f"edge {e} is unidirectional in an index-2 skeleton")
                self.odd.append(len(faces_of[k]) == 2)

        # every face must log each odd element exactly once
        odd_elems = sum(tab.odd)
        for f, w in enumerate(walks):
            odd_steps = sum(1 for d, _ in w if self.odd[eidx[d.edge]])
            if odd_steps != odd_elems:
                raise Infeasible(
                    f"face {f} has {odd_steps} odd-current steps, a complete log needs {odd_elems}"
                )

        # currents at a vertex sum to zero, so each vertex meets an even number of odd darts
        for v, rot in sk.rotations.items():
            if len(rot) > 1 and sum(self.odd[eidx[d.edge]] for d in rot) % 2:
                raise Infeasible(f"vertex {v} meets an odd number of odd-current edges")

        # Kirchhoff rows: entering current through dart (e,j) is current(e,1-j)
        self.kcl: dict[int, list[tuple[int, int]]] = {}
        self.leaf_coef: dict[int, int] = {}
        for v, rot in sk.rotations.items():
            coefs: dict[int, int] = {}
            for d in rot:
                k = eidx[d.edge]
                c = 1 if d.end == 1 else -sk.signatures[d.edge]
                coefs[k] = coefs.get(k, 0) + c
            row = [(k, c) for k, c in coefs.items() if c % self.n]
            if deg[v] == 3:
                self.kcl[v] = row
            elif deg[v] == 1:
                k, c = row[0]
                self.leaf_coef[k] = c
            else:
                raise Infeasible(f"vertex {v} has degree {deg[v]}")
        self.vert_of_edge: list[list[int]] = [[] for _ in range(m)]
        for v, row in self.kcl.items():
            for k, _ in row:
                self.vert_of_edge[k].append(v)

        # domains
        odd_tab, order = tab.odd, tab.order
        self.domain: list[list[int]] = []
        for k, e in enumerate(self.edges):
            if e in sk.fixed:
                dom = [sk.group.index(sk.fixed[e])]
            else:
                dom = []
                for x in range(1, self.n):
                    if odd_tab[x] != self.odd[k]:
                        continue
                    if self.leaf[k]:
                        if order[x] not in (2, 3):
                            continue
                    elif order[x] == 2:
                        continue
                    dom.append(x)
                if e in sk.allowed:
                    keep = {sk.group.index(y) for y in sk.allowed[e]}
                    dom = [x for x in dom if x in keep]
            self.domain.append(dom)

    def mul(self, c: int, x: int) -> int:
        if c == 1:
            return x
        if c == -1:
            return self.tab.neg[x]
        y = 0
        step = x if c > 0 else self.tab.neg[x]
        for _ in range(abs(c)):
            y = self.tab.add[y][step]
        return y


def _order_edges(p: _Problem) -> list[int]:
    """Static branching order: vortex edges first, then walk the graph so that
    every choice leaves as many trivalent vertices as possible one step from
    being forced."""
    m = len(p.edges)
    assigned = [False] * m
    order: list[int] = []

    def propagate():
        changed = True
        while changed:
            changed = False
            for v, row in p.kcl.items():
                free = [k for k, c in row if not assigned[k]]
                if len(free) == 1 and abs(dict(row)[free[0]]) == 1:
                    assigned[free[0]] = True
                    changed = True

    fixed = [k for k in range(m) if p.edges[k] in p.sk.fixed]
    for k in fixed:
        assigned[k] = True
    propagate()
    leaves = sorted((k for k in range(m) if p.leaf[k] and not assigned[k]), key=lambda k: len(p.domain[k]))
    for k in leaves:
        if not assigned[k]:
            order.append(k)
            assigned[k] = True
            propagate()
    while not all(assigned):
        best, best_score = None, None
        for k in range(m):
            if assigned[k]:
                continue
            score = 0
            for v in p.vert_of_edge[k]:
                nfree = sum(1 for j, _ in p.kcl[v] if not assigned[j])
                score += {1: 0, 2: 3, 3: 1}.get(nfree, 0)
            key = (score, -k)
            if best_score is None or key > best_score:
                best, best_score = k, key
        order.append(best)
        assigned[best] = True
        propagate()
    return order


def iter_solutions(sk: Skeleton, budget: float | None = None, stats: dict | None = None,
                   symmetry: bool = True, seed: int | None = None) -> Iterator[dict[int, GroupElement]]:
    """Yield raw assignments ``{edge: current on dart e.0}`` in deterministic order.

    With ``symmetry`` only one of each pair of solutions related by negating
    every current is produced.  Raises :class:`BudgetExhausted` when
    ``budget`` seconds elapse.  ``seed`` shuffles the value order of every
    domain reproducibly.
    """
    p = _Problem(sk)
    if seed is not None:
        rng = random.Random(seed)
        for dom in p.domain:
            rng.shuffle(dom)
    tab = p.tab
    add, neg, order_tab = tab.add, tab.neg, tab.order
    m = len(p.edges)
    n = p.n
    branch = _order_edges(p)
    val = [-1] * m
    used = [bytearray(n) for _ in range(p.nfaces)]
    merged = [0] * p.nfaces
    merges_needed = [raw - (n - 1) for raw in p.face_raw]
    deadline = None if budget is None else time.monotonic() + budget
    counter = [0]
    if stats is not None:
        stats.setdefault("nodes", 0)

    def place(k: int, x: int, trail: list) -> bool:
        """Assign, mark face entries, and push undo records; False on conflict."""
        if p.leaf[k] and order_tab[x] == 2:
            f = p.trav[k][0][0]
            if used[f][x] or merged[f] >= merges_needed[f]:
                return False
            used[f][x] = 1
            merged[f] += 1
            trail.append(("m", f, x))
        else:
            marks = []
            for f, sign in p.trav[k]:
                y = x if sign == 1 else neg[x]
                if y == 0 or used[f][y]:
                    for g, z in marks:
                        used[g][z] = 0
                    return False
                used[f][y] = 1
                marks.append((f, y))
            trail.append(("u", marks))
        val[k] = x
        trail.append(("v", k))
        return True

    def undo(trail: list, upto: int) -> None:
        while len(trail) > upto:
            rec = trail.pop()
            if rec[0] == "v":
                val[rec[1]] = -1
            elif rec[0] == "u":
                for f, y in rec[1]:
                    used[f][y] = 0
            else:
                used[rec[1]][rec[2]] = 0
                merged[rec[1]] -= 1

    def propagate(start: list[int], trail: list) -> bool:
        queue = list(start)
        while queue:
            k = queue.pop()
            for v in p.vert_of_edge[k]:
                row = p.kcl[v]
                free = None
                nfree = 0
                total = 0
                for j, c in row:
                    if val[j] < 0:
                        nfree += 1
                        free = (j, c)
                    else:
                        total = add[total][p.mul(c, val[j])]
                if nfree == 0:
                    if total != 0:
                        return False
                elif nfree == 1:
                    j, c = free
                    if abs(c) != 1:
                        continue
                    x = neg[total] if c == 1 else total
                    if x not in p.dom_set[j]:
                        return False
                    if not place(j, x, trail):
                        return False
                    queue.append(j)
        return True

    p.dom_set = [set(d) for d in p.domain]
    trail: list = []
    init = [k for k in range(m) if p.edges[k] in sk.fixed]
    for k in init:
        if val[k] >= 0:
            continue
        if not place(k, p.domain[k][0], trail) or not propagate([k], trail):
            return
    broken_init = not symmetry or any(val[k] >= 0 and neg[val[k]] != val[k] for k in range(m))

    def rec(depth: int, broken: bool):
        counter[0] += 1
        if deadline is not None and counter[0] % 512 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted()
        while depth < len(branch) and val[branch[depth]] >= 0:
            depth += 1
        if depth == len(branch):
            if all(v >= 0 for v in val):
                yield {p.edges[k]: sk.group.from_index(val[k]) for k in range(m)}
            return
        k = branch[depth]
        for x in p.domain[k]:
            nx = neg[x]
            if not broken and nx < x:
                continue
            mark = len(trail)
            if place(k, x, trail) and propagate([k], trail):
                yield from rec(depth + 1, broken or nx != x)
            undo(trail, mark)

    try:
        yield from rec(0, broken_init)
    finally:
        if stats is not None:
            stats["nodes"] += counter[0]


def search(sk: Skeleton, budget: float | None = None, first: bool = False,
           limit: int | None = None, symmetry: bool = True, seed: int | None = None) -> SearchResult:
    """Run the backtracking search and verify every solution with the law checker."""
    start = time.monotonic()
    stats: dict = {}
    sols: list[CurrentGraph] = []
    status = COMPLETE
    try:
        for raw in iter_solutions(sk, budget, stats, symmetry, seed):
            g = sk.complete(raw)
            report = check_laws(g, sk.mode)
            if not report.passed:
                raise AssertionError("search emitted a graph failing the laws:\n" + str(report))
            sols.append(g)
            if first or (limit is not None and len(sols) >= limit):
                status = FOUND
                break
    except BudgetExhausted:
        status = BUDGET
    return SearchResult(sols, status, stats.get("nodes", 0), time.monotonic() - start)


def prune_partial(sk: Skeleton, assignment: Mapping[int, GroupElement]) -> str | None:
    """Reason to abandon a partial assignment, or None if it may still extend.

    Checks repeated currents (up to sign) within a face, Kirchhoff's law at
    trivalent vertices whose currents are all known or forced, and face
    lengths against the size of a complete log.
    """
    try:
        p = _Problem(sk)
    except Infeasible as exc:
        return str(exc)
    code = {p.eidx[e]: sk.group.index(x) for e, x in assignment.items()}
    neg, add = p.tab.neg, p.tab.add
    seen = [dict() for _ in range(p.nfaces)]
    for k, x in code.items():
        if x == 0:
            return f"edge {p.edges[k]} carries the identity"
        if p.odd[k] != p.tab.odd[x]:
            return f"edge {p.edges[k]} needs an {'odd' if p.odd[k] else 'even'} current"
        vals = {x} if p.leaf[k] and p.tab.order[x] == 2 else None
        for f, sign in p.trav[k]:
            y = x if sign == 1 else neg[x]
            if vals is not None and len(vals) == 1 and seen[f].get(y) == p.edges[k]:
                continue
            if y in seen[f]:
                other = seen[f][y]
                return (f"current {sk.group.from_index(y)} repeats in face {f} "
                        f"(edges {other} and {p.edges[k]})")
            seen[f][y] = p.edges[k]
    # Kirchhoff: complete vertices must balance; forced values must not clash
    for v, row in p.kcl.items():
        free = [(j, c) for j, c in row if j not in code]
        total = 0
        for j, c in row:
            if j in code:
                total = add[total][p.mul(c, code[j])]
        if not free and total:
            return f"vertex {v} has excess {sk.group.from_index(total)}"
        if len(free) == 1 and abs(free[0][1]) == 1:
            j, c = free[0]
            x = neg[total] if c == 1 else total
            if x == 0 or p.tab.odd[x] != p.odd[j]:
                return f"vertex {v} forces an impossible current on edge {p.edges[j]}"
            for f, sign in p.trav[j]:
                y = x if sign == 1 else neg[x]
                if y in seen[f]:
                    return f"vertex {v} forces {sk.group.from_index(x)} on edge {p.edges[j]}, already used"
    return None
