"""Certification of triangular embeddings of complete graphs."""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field

from .derive import RotationSystem
from .model import Dart
from .tracer import trace_rotation_system

__all__ = ["Certificate", "expected_genus", "certify"]


def expected_genus(n: int) -> int:
    """Genus of K_n: ceil((n-3)(n-4)/12)."""
    if n < 3:
        raise ValueError(f"the genus formula needs n >= 3, got {n}")
    return -(-(n - 3) * (n - 4) // 12)


@dataclass
class Certificate:
    n: int
    V: int
    E: int
    F: int
    all_triangles: bool
    is_complete: bool
    orientable: bool
    euler_characteristic: int
    genus: int | None
    expected_genus: int
    passed: bool
    witnesses: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        rows = [
            ("n", self.n),
            ("V", self.V),
            ("E", self.E),
            ("F", self.F),
            ("euler_characteristic", self.euler_characteristic),
            ("orientable", self.orientable),
            ("all_triangles", self.all_triangles),
            ("is_complete", self.is_complete),
            ("genus", "-" if self.genus is None else self.genus),
            ("expected_genus", self.expected_genus),
            ("pass", self.passed),
        ]
        width = max(len(k) for k, _ in rows)
        out = [f"{k:<{width}}  {v if not isinstance(v, bool) else str(v).lower()}" for k, v in rows]
        out += [f"{'witness':<{width}}  {w}" for w in self.witnesses]
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def as_dict(self) -> dict:
        return asdict(self)


def _signature_orientable(vertices, edges: dict, sig: dict) -> bool:
    side = {}
    adj = {v: [] for v in vertices}
    for e, (u, v) in edges.items():
        adj[u].append((v, sig[e]))
        adj[v].append((u, sig[e]))
    for root in vertices:
        if root in side:
            continue
        side[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for v, s in adj[u]:
                if v not in side:
                    side[v] = side[u] * s
                    stack.append(v)
                elif side[v] != side[u] * s:
                    return False
    return True


def certify(rs: RotationSystem, max_witnesses: int = 10) -> Certificate:
    """Trace the faces of ``rs`` and compare against the genus of K_n.

    Pure systems are traced with every signature +1; systems carrying -1
    signatures go through the same general tracer.
    """
    vertices = sorted(rs.rotation)
    n = len(vertices)
    vset = set(vertices)
    witnesses: list[str] = []

    complete = True
    for v in vertices:
        row = rs.rotation[v]
        counts = Counter(row)
        missing = vset - set(row) - {v}
        dup = [u for u, c in counts.items() if c > 1]
        bad = [u for u in counts if u == v or u not in vset]
        if missing or dup or bad:
            complete = False
            if len(witnesses) < max_witnesses:
                parts = []
                if missing:
                    parts.append("missing " + " ".join(map(str, sorted(missing)[:5])))
                if dup:
                    parts.append("duplicate " + " ".join(map(str, sorted(dup)[:5])))
                if bad:
                    parts.append("invalid " + " ".join(map(str, bad[:5])))
                witnesses.append(f"vertex {v}: " + "; ".join(parts))

    # an edge id per unordered pair; both ends must list each other exactly once
    edge_id: dict[frozenset, int] = {}
    ends: dict[int, tuple] = {}
    rotations: dict = {}
    symmetric = True
    for v in vertices:
        darts = []
        for u in rs.rotation[v]:
            if u not in vset or u == v:
                symmetric = False
                continue
            key = frozenset((u, v))
            if key not in edge_id:
                edge_id[key] = len(edge_id)
                ends[edge_id[key]] = (min(u, v), max(u, v))
            e = edge_id[key]
            darts.append(Dart(e, 0 if v == ends[e][0] else 1))
        rotations[v] = tuple(darts)
    all_darts = [d for rot in rotations.values() for d in rot]
    if len(all_darts) != len(set(all_darts)) or len(all_darts) != 2 * len(edge_id):
        symmetric = False
    if not symmetric:
        witnesses.append("adjacency is not symmetric; faces cannot be traced")

    E = len(edge_id)
    sig = {e: 1 for e in ends}
    if rs.signatures:
        for key, s in rs.signatures.items():
            if key in edge_id:
                sig[edge_id[key]] = s
    orientable = _signature_orientable(vertices, ends, sig)

    if symmetric:
        walks = trace_rotation_system(rotations, sig)
        F = len(walks)
        lengths = Counter(len(w) for w in walks)
        all_tri = set(lengths) == {3}
        if not all_tri and len(witnesses) < max_witnesses:
            witnesses.append("face lengths " + ", ".join(f"{k}x{c}" for k, c in sorted(lengths.items())))
    else:
        F, all_tri = 0, False

    chi = n - E + F
    genus = None
    if orientable and symmetric:
        if chi % 2:
            raise AssertionError(f"odd Euler characteristic {chi} on an orientable system")
        genus = (2 - chi) // 2
    exp = expected_genus(n)
    passed = all_tri and complete and orientable and genus == exp
    return Certificate(n, n, E, F, all_tri, complete, orientable, chi, genus, exp, passed, witnesses)
