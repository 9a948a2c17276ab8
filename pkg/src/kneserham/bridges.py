"""Spanning tree on rotation orbits and the bridge edges that realise it in KG(T_n)."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .errors import InvariantError, PreconditionError
from .guide import GuideCycle
from .orbits import OrbitPartition
from .polygon import Polygon, Triangulation, polygon


@dataclass
class OrbitTree:
    n: int
    order: List[int]                      # orbit ids by first appearance along the guide
    parent: Dict[int, int]                # child id -> parent id
    witness: Dict[int, Tuple[int, int]]   # child id -> (code in parent, code in child), flip-adjacent

    @property
    def root(self) -> int:
        return self.order[0]

    def edges(self) -> List[Tuple[int, int]]:
        return [(self.parent[c], c) for c in self.order[1:]]

    def degree(self) -> Counter:
        deg = Counter()
        for p, c in self.edges():
            deg[p] += 1
            deg[c] += 1
        return deg


@dataclass(frozen=True)
class BridgeEdge:
    a: int       # endpoint in the parent orbit
    b: int       # endpoint in the child orbit
    child: int


@dataclass
class AugmentedFactor:
    n: int
    bridges: List[BridgeEdge]
    # number of bridges hosted by each code (absent means zero)
    hosted: Dict[int, int] = field(default_factory=dict)

    def bridge_for(self, child: int) -> BridgeEdge:
        for e in self.bridges:
            if e.child == child:
                return e
        raise KeyError(child)

    def degree(self, part: OrbitPartition, code: int) -> int:
        size = part.orbit_of_code(code).size
        base = 1 if size == 2 else 2
        return base + self.hosted.get(code, 0)


def build_orbit_tree(guide: GuideCycle, part: OrbitPartition) -> OrbitTree:
    if guide.n != part.n:
        raise PreconditionError(f"guide for n={guide.n}, partition for n={part.n}")
    index = part.index
    seq = guide.seq
    first = index[seq[0]][0]
    order = [first]
    seen = {first}
    parent = {}
    witness = {}
    prev_code = seq[0]
    prev_orbit = first
    for code in seq[1:]:
        oid = index[code][0]
        if oid not in seen:
            seen.add(oid)
            order.append(oid)
            parent[oid] = prev_orbit
            witness[oid] = (prev_code, code)
        prev_code, prev_orbit = code, oid
    if len(order) != len(part.orbits):
        missing = len(part.orbits) - len(order)
        raise InvariantError(f"guide misses {missing} orbit(s)")
    return OrbitTree(part.n, order, parent, witness)


def _orientation(poly: Polygon, t: int, u: int) -> int:
    if t & poly.rotate(u, 1) == 0:
        return 1
    if t & poly.rotate(u, -1) == 0:
        return -1
    raise InvariantError(f"no rotation separates {poly.encode(t)} and {poly.encode(u)}")


def bridge_orientation(t: Triangulation, u: Triangulation) -> int:
    """+1 or -1 such that ``t`` and ``u`` rotated by it share no diagonal; +1 preferred."""
    if t.n != u.n or len(set(t.diagonals) ^ set(u.diagonals)) != 2:
        raise PreconditionError("triangulations are not flip-adjacent")
    poly = polygon(t.n)
    return _orientation(poly, poly.code_of(t), poly.code_of(u))


def select_bridges(tree: OrbitTree, part: OrbitPartition) -> AugmentedFactor:
    """Greedy choice of one KG edge per tree edge, at most one bridge per vertex."""
    poly = part.polygon
    hosted = {}
    bridges = []
    n = poly.n
    for child in tree.order[1:]:
        w_parent, w_child = tree.witness[child]
        eps = _orientation(poly, w_parent, w_child)
        a, b = w_parent, poly.rotate(w_child, eps)
        for sigma in range(n):
            ra, rb = poly.rotate(a, sigma), poly.rotate(b, sigma)
            if ra not in hosted and rb not in hosted:
                break
        else:
            raise InvariantError(f"no free rotation for the bridge into orbit {child}")
        hosted[ra] = 1
        hosted[rb] = 1
        bridges.append(BridgeEdge(ra, rb, child))
    return AugmentedFactor(part.n, bridges, hosted)
