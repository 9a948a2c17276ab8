"""Rotation orbits of triangulations and the 2-factor they induce in KG(T_n)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .errors import InvalidSizeError, SizeTwoOrbitError
from .polygon import Polygon, Triangulation, polygon


@dataclass(frozen=True)
class RotationOrbit:
    """An orbit stored as codes: ``members[k] == rotate(rep, k)``."""

    n: int
    members: Tuple[int, ...]
    id: int = -1

    @property
    def rep(self) -> int:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)

    def triangulations(self) -> List[Triangulation]:
        poly = polygon(self.n)
        return [poly.triangulation(c) for c in self.members]

    def encodings(self) -> List[str]:
        poly = polygon(self.n)
        return [poly.encode(c) for c in self.members]


@dataclass
class OrbitPartition:
    n: int
    orbits: List[RotationOrbit]
    # code -> (orbit id, position inside the orbit)
    index: Dict[int, Tuple[int, int]] = field(repr=False)

    @property
    def polygon(self) -> Polygon:
        return polygon(self.n)

    def orbit_id(self, code: int) -> int:
        return self.index[code][0]

    def orbit_of_code(self, code: int) -> RotationOrbit:
        return self.orbits[self.index[code][0]]

    def sizes(self) -> List[int]:
        return [o.size for o in self.orbits]


def _orbit_members(poly: Polygon, code: int) -> List[int]:
    members = [code]
    nxt = poly.rotate(code, 1)
    while nxt != code:
        members.append(nxt)
        nxt = poly.rotate(nxt, 1)
    return members


def orbit_of(t: Triangulation) -> RotationOrbit:
    """Full orbit of ``t``, listed from its canonically smallest member."""
    poly = polygon(t.n)
    members = _orbit_members(poly, poly.code_of(t))
    start = min(range(len(members)), key=lambda k: poly.sort_key(members[k]))
    return RotationOrbit(t.n, tuple(members[start:] + members[:start]))


def orbit_partition(n: int) -> OrbitPartition:
    if n < 4:
        raise InvalidSizeError(f"n={n}: orbits need n >= 4")
    poly = polygon(n)
    index = {}
    orbits = []
    # codes arrive in canonical order, so the first unseen member of an
    # orbit is its canonical representative
    for code in poly.all_codes():
        if code in index:
            continue
        oid = len(orbits)
        members = _orbit_members(poly, code)
        for pos, c in enumerate(members):
            index[c] = (oid, pos)
        orbits.append(RotationOrbit(n, tuple(members), oid))
    return OrbitPartition(n, orbits, index)


def orbit_cycle(orbit: RotationOrbit) -> Tuple[int, ...]:
    """The orbit as a cycle of KG(T_n); consecutive members are disjoint."""
    if orbit.size == 2:
        raise SizeTwoOrbitError("an orbit of size 2 is a single edge, not a cycle")
    if orbit.size < 2:
        raise SizeTwoOrbitError(f"orbit of size {orbit.size} has no cycle")
    return orbit.members


def all_ears(poly: Polygon, code: int) -> bool:
    n = poly.n
    return all(min(j - i, n - j + i) == 2 for i, j in poly.diagonals_of(code))
