"""Finite abelian groups written as direct products of cyclic groups.

Elements are immutable and always stored reduced, so structural equality is
group equality.  The parity of an element is the parity of its last residue,
which singles out the index-2 subgroup ``Z_m1 x ... x 2Z_mk`` whenever the
last modulus is even.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

__all__ = [
    "GroupError",
    "GroupSpec",
    "GroupElement",
    "add",
    "negate",
    "element_order",
    "is_even",
    "parse_group",
]


class GroupError(ValueError):
    """Raised for malformed group specs, foreign elements or undefined parity."""


_GROUP_RE = re.compile(r"^\s*Z(\d+)((?:\s*[xX]\s*Z\d+)*)\s*$")


@dataclass(frozen=True)
class GroupSpec:
    moduli: tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if not moduli:
            raise GroupError("a group needs at least one cyclic factor")
        if any(m < 2 for m in moduli):
            raise GroupError(f"moduli must be >= 2, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def z3_z12s(cls, s: int) -> "GroupSpec":
        if s < 1:
            raise GroupError(f"s must be >= 1, got {s}")
        return cls((3, 12 * s))

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def has_parity(self) -> bool:
        return self.moduli[-1] % 2 == 0

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.moduli))

    def element(self, *residues: int) -> "GroupElement":
        if len(residues) == 1 and isinstance(residues[0], (tuple, list)):
            residues = tuple(residues[0])
        if len(residues) != len(self.moduli):
            raise GroupError(
                f"expected {len(self.moduli)} residues for {self}, got {len(residues)}"
            )
        return GroupElement(self, tuple(residues))

    def elements(self) -> Iterator["GroupElement"]:
        """All elements, in lexicographic order of residues."""
        for residues in product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, residues)

    def nonzero(self) -> list["GroupElement"]:
        return [g for g in self.elements() if not g.is_identity]

    def parse_element(self, text: str) -> "GroupElement":
        """Parse ``(a,b,...)``; residues may be negative or unreduced."""
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise GroupError(f"group element must look like (a,b): {text!r}")
        try:
            residues = tuple(int(part) for part in body[1:-1].split(","))
        except ValueError:
            raise GroupError(f"non-integer residue in {text!r}") from None
        return self.element(*residues)

    # Dense integer coding, last coordinate fastest.  Used by the search.
    def index(self, g: "GroupElement") -> int:
        code = 0
        for r, m in zip(g.residues, self.moduli):
            code = code * m + r
        return code

    def from_index(self, code: int) -> "GroupElement":
        residues = []
        for m in reversed(self.moduli):
            code, r = divmod(code, m)
            residues.append(r)
        return GroupElement(self, tuple(reversed(residues)))

    @cached_property
    def tables(self) -> "GroupTables":
        return GroupTables(self)

    def __str__(self) -> str:
        return "x".join(f"Z{m}" for m in self.moduli)


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    residues: tuple[int, ...]

    def __post_init__(self):
        if len(self.residues) != len(self.spec.moduli):
            raise GroupError("residue count does not match the group")
        reduced = tuple(int(r) % m for r, m in zip(self.residues, self.spec.moduli))
        object.__setattr__(self, "residues", reduced)

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement) or other.spec != self.spec:
            raise GroupError(f"cannot combine elements of {self.spec} and {getattr(other, 'spec', other)}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.spec, tuple(a + b for a, b in zip(self.residues, other.residues)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.spec, tuple(-r for r in self.residues))

    def __mul__(self, k: int) -> "GroupElement":
        return GroupElement(self.spec, tuple(k * r for r in self.residues))

    __rmul__ = __mul__

    def __lt__(self, other: "GroupElement") -> bool:
        self._check(other)
        return self.residues < other.residues

    @property
    def is_identity(self) -> bool:
        return not any(self.residues)

    @property
    def order(self) -> int:
        return element_order(self)

    @property
    def is_even(self) -> bool:
        return is_even(self)

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.residues) + ")"

    def __repr__(self) -> str:
        return f"GroupElement{self}"


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def negate(a: GroupElement) -> GroupElement:
    return -a


def element_order(a: GroupElement) -> int:
    """Least k >= 1 with k*a = 0: the lcm of the componentwise orders."""
    order = 1
    for r, m in zip(a.residues, a.spec.moduli):
        order = math.lcm(order, m // math.gcd(r, m))
    return order


def is_even(a: GroupElement) -> bool:
    if not a.spec.has_parity:
        raise GroupError(f"parity is undefined in {a.spec}: last modulus is odd")
    return a.residues[-1] % 2 == 0


def parse_group(text: str | Sequence[int]) -> GroupSpec:
    """Accept ``Z3xZ36``, ``3 36`` or a sequence of moduli."""
    if not isinstance(text, str):
        return GroupSpec(tuple(text))
    match = _GROUP_RE.match(text)
    if match:
        return GroupSpec(tuple(int(m) for m in re.findall(r"\d+", text)))
    parts = text.split()
    if parts and all(p.isdigit() for p in parts):
        return GroupSpec(tuple(int(p) for p in parts))
    raise GroupError(f"cannot parse group {text!r}")


class GroupTables:
    """Integer-coded addition, negation, order and parity lookup tables."""

    def __init__(self, spec: GroupSpec):
        n = spec.order
        elems = [spec.from_index(i) for i in range(n)]
        self.spec = spec
        self.size = n
        self.add = [[spec.index(a + b) for b in elems] for a in elems]
        self.neg = [spec.index(-a) for a in elems]
        self.order = [element_order(a) for a in elems]
        self.odd = [bool(a.residues[-1] % 2) for a in elems] if spec.has_parity else None
