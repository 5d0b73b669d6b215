"""Slow reference tracer built on flags, kept separate from the library code.

Each dart carries two flags, one per side.  ``alpha1`` swaps the flag on the
forward side of a dart with the backward flag of the next dart around the same
vertex; ``alpha0`` moves a flag to the other end of its edge, changing side
unless the edge is twisted.  Faces are the orbits of the group generated by
the two involutions; sides of edges are the ``alpha0`` orbits.
"""

from currentgraph.model import Dart


def _alpha0(flag, sig):
    (e, end), s = flag
    return (e, 1 - end), -s * sig[e]


def _alpha1(flag, nxt, prv):
    d, s = flag
    return (nxt[d], -1) if s == 1 else (prv[d], 1)


def face_partition(rotations, sig):
    """Faces as a set of frozensets of sides; a side is a frozenset of two flags."""
    nxt, prv = {}, {}
    for rot in rotations.values():
        rot = [tuple(d) for d in rot]
        for k, d in enumerate(rot):
            nxt[d] = rot[(k + 1) % len(rot)]
            prv[d] = rot[k - 1]
    flags = [(d, s) for d in nxt for s in (1, -1)]
    seen = set()
    faces = set()
    for f in flags:
        if f in seen:
            continue
        orbit = {f}
        stack = [f]
        while stack:
            x = stack.pop()
            for y in (_alpha0(x, sig), _alpha1(x, nxt, prv)):
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        seen |= orbit
        sides = frozenset(frozenset((x, _alpha0(x, sig))) for x in orbit)
        faces.add(sides)
    return faces


def walk_sides(walk, sig):
    """Sides crossed by a library walk: departing along d in behaviour b uses flag (d, -b)."""
    out = []
    for d, after in walk:
        b = after * sig[d.edge]
        flag = ((d.edge, d.end), -b)
        out.append(frozenset((flag, _alpha0(flag, sig))))
    return out
