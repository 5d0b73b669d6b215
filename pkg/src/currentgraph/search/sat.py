"""Optional SAT engine (needs the ``python-sat`` package).

One boolean per (edge, admissible current), channelled to one-hot residues
in each cyclic factor.  Each edge takes exactly one value, each face logs
every nonzero element exactly once, and Kirchhoff's law is imposed factor by
factor at every trivalent vertex.
Solutions are decoded and re-checked with the law checker like those of the
backtracking engine.  The solver runs in a child process so a time budget can
be enforced by terminating it.
"""

from __future__ import annotations

import multiprocessing as mp
import time

from ..laws import check_laws
from .solver import BUDGET, COMPLETE, FOUND, Infeasible, SearchResult, Skeleton, _Problem

__all__ = ["encode", "sat_search"]


def encode(sk: Skeleton):
    """CNF clauses plus the variable map ``{(edge index, value code): var}``."""
    from pysat.card import CardEnc, EncType
    from pysat.formula import IDPool

    p = _Problem(sk)
    pool = IDPool()
    tab = p.tab
    var = {}
    clauses: list[list[int]] = []
    for k, dom in enumerate(p.domain):
        lits = []
        for x in dom:
            var[k, x] = pool.id((k, x))
            lits.append(var[k, x])
        clauses += CardEnc.equals(lits, 1, vpool=pool, encoding=EncType.seqcounter).clauses

    # Kirchhoff's law splits over the cyclic factors, so each factor gets its
    # own one-hot residue variables and much smaller ternary tables
    moduli = sk.group.moduli
    residues = [sk.group.from_index(x).residues for x in range(p.n)]
    comp = {}
    for k, dom in enumerate(p.domain):
        for i, m in enumerate(moduli):
            seen = {}
            for x in dom:
                seen.setdefault(residues[x][i], []).append(var[k, x])
            for r in range(m):
                comp[k, i, r] = pool.id(("c", k, i, r))
                lits = seen.get(r, [])
                clauses.append([-comp[k, i, r]] + lits)
                clauses += [[-lit, comp[k, i, r]] for lit in lits]

    for row in p.kcl.values():
        if len(row) != 3 or any(abs(c) != 1 for _, c in row):
            raise Infeasible("the SAT engine needs three distinct non-loop edges at every trivalent vertex")
        (k1, c1), (k2, c2), (k3, c3) = row
        for i, m in enumerate(moduli):
            for a in range(m):
                for b in range(m):
                    t = (-c3 * (c1 * a + c2 * b)) % m
                    clauses.append([-comp[k1, i, a], -comp[k2, i, b], comp[k3, i, t]])

    slots: dict[tuple[int, int], list[int]] = {}
    for (k, x), lit in var.items():
        if p.leaf[k] and tab.order[x] == 2:
            slots.setdefault((p.trav[k][0][0], x), []).append(lit)
            continue
        for f, sign in p.trav[k]:
            y = x if sign == 1 else tab.neg[x]
            slots.setdefault((f, y), []).append(lit)
    for f in range(p.nfaces):
        for y in range(1, p.n):
            lits = slots.get((f, y))
            if not lits:
                raise Infeasible(f"no edge can log {sk.group.from_index(y)} in face {f}")
            clauses += CardEnc.equals(lits, 1, vpool=pool, encoding=EncType.seqcounter).clauses
    return p, clauses, var


def _solve(clauses, blocks, limit, conn):
    from pysat.solvers import Cadical153

    models = []
    with Cadical153(bootstrap_with=clauses) as s:
        while s.solve():
            model = [lit for lit in s.get_model() if lit > 0]
            models.append(model)
            conn.send(model)
            if limit is not None and len(models) >= limit:
                break
            s.add_clause([-lit for lit in model if lit in blocks])
    conn.send(None)
    conn.close()


def sat_search(sk: Skeleton, budget: float | None = None, limit: int | None = 1) -> SearchResult:
    """Solve with CaDiCaL; ``limit=None`` enumerates every solution."""
    start = time.monotonic()
    p, clauses, var = encode(sk)
    decode = {lit: kx for kx, lit in var.items()}
    blocks = set(decode)
    parent, child = mp.Pipe(duplex=False)
    proc = mp.get_context("fork").Process(target=_solve, args=(clauses, blocks, limit, child), daemon=True)
    proc.start()
    child.close()
    sols = []
    status = COMPLETE
    try:
        while True:
            left = None if budget is None else budget - (time.monotonic() - start)
            if left is not None and (left <= 0 or not parent.poll(left)):
                status = BUDGET
                break
            try:
                model = parent.recv()
            except EOFError:
                break
            if model is None:
                break
            raw = {p.edges[decode[lit][0]]: sk.group.from_index(decode[lit][1]) for lit in model if lit in decode}
            g = sk.complete(raw)
            report = check_laws(g, sk.mode)
            if not report.passed:
                raise AssertionError("SAT engine produced a graph failing the laws:\n" + str(report))
            sols.append(g)
            if limit is not None and len(sols) >= limit:
                status = FOUND
                break
    finally:
        if proc.is_alive():
            proc.terminate()
        proc.join()
    return SearchResult(sols, status, 0, time.monotonic() - start)
