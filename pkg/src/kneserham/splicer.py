"""Merge the orbit cycles along the tree into one Hamiltonian cycle of KG(T_n)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import IO, Iterator, List, Optional

from .bridges import AugmentedFactor, OrbitTree, build_orbit_tree, select_bridges
from .errors import InvalidSizeError, InvariantError, UnsupportedSizeError
from .guide import build_guide_cycle, normalize_cycle
from .orbits import OrbitPartition, orbit_partition
from .polygon import Polygon, Triangulation, catalan, polygon

HEADER_TAG = "kneser-ham"


def set_checksum(poly: Polygon) -> str:
    """sha256 prefix over the sorted encodings of all of T_n."""
    h = hashlib.sha256()
    for code in poly.all_codes():
        h.update(poly.encode(code).encode())
        h.update(b"\n")
    return h.hexdigest()[:16]


def sequence_digest(encodings) -> str:
    h = hashlib.sha256()
    for text in encodings:
        h.update(text.encode())
        h.update(b"\n")
    return h.hexdigest()[:16]


@dataclass
class HamiltonianCycle:
    n: int
    seq: List[int]

    @property
    def polygon(self) -> Polygon:
        return polygon(self.n)

    @property
    def checksum(self) -> str:
        return set_checksum(self.polygon)

    @property
    def digest(self) -> str:
        """sha256 prefix over the listing in cycle order; binds the header to this exact sequence."""
        return sequence_digest(self.encodings())

    @property
    def header(self) -> str:
        return f"{HEADER_TAG} n={self.n} len={len(self.seq)} checksum={self.checksum} digest={self.digest}"

    def __len__(self) -> int:
        return len(self.seq)

    def triangulations(self) -> Iterator[Triangulation]:
        poly = self.polygon
        return (poly.triangulation(c) for c in self.seq)

    def encodings(self) -> Iterator[str]:
        poly = self.polygon
        return (poly.encode(c) for c in self.seq)

    def write(self, fh: IO[str], fmt: str = "compact") -> None:
        poly = self.polygon
        if fmt == "compact":
            lines = list(self.encodings())
            fh.write(f"{HEADER_TAG} n={self.n} len={len(lines)} checksum={self.checksum} "
                     f"digest={sequence_digest(lines)}\n")
            for text in lines:
                fh.write(text + "\n")
        elif fmt == "jsonl":
            for c in self.seq:
                fh.write(json.dumps({"diagonals": [list(d) for d in poly.diagonals_of(c)]}) + "\n")
        else:
            raise ValueError(f"unknown format {fmt!r}")


class _Ring:
    """Cyclic doubly-linked list over codes."""

    def __init__(self, seq):
        self.nxt = {}
        self.prv = {}
        k = len(seq)
        for i, c in enumerate(seq):
            self.nxt[c] = seq[(i + 1) % k]
            self.prv[c] = seq[i - 1]

    def __contains__(self, c):
        return c in self.nxt

    def has_edge(self, a, b):
        return self.nxt.get(a) == b or self.prv.get(a) == b

    def replace_edge(self, a, b, path):
        """Swap edge {a, b} for a -> path... -> b, respecting the ring's direction."""
        nxt, prv = self.nxt, self.prv
        if nxt.get(a) == b:
            chain = [a] + path + [b]
        elif prv.get(a) == b:
            chain = [b] + path[::-1] + [a]
        else:
            return False
        for x, y in zip(chain, chain[1:]):
            nxt[x] = y
            prv[y] = x
        return True

    def walk(self, start):
        out = [start]
        c = self.nxt[start]
        while c != start:
            out.append(c)
            c = self.nxt[c]
        return out


def splice(part: OrbitPartition, tree: OrbitTree, aug: AugmentedFactor,
           audit: bool = False) -> HamiltonianCycle:
    """Insert each child orbit into the growing cycle in place of its parent's occupied edge.

    With ``audit`` every still-needed occupied edge is checked before each step
    and the ring is re-walked after it; quadratic, for small n only.
    """
    poly = part.polygon
    orbits = part.orbits
    root = orbits[tree.root]
    if root.size < 3:
        raise InvariantError("root orbit must be a genuine cycle")
    ring = _Ring(list(root.members))
    position = {oid: i for i, oid in enumerate(tree.order)}
    by_child = {e.child: e for e in aug.bridges}
    covered = root.size

    for step, child in enumerate(tree.order[1:], start=1):
        e = by_child[child]
        s, t = e.a, e.b
        if audit:
            _audit_active(poly, ring, tree, by_child, position, step)
        size = orbits[child].size
        path = [t]
        c = t
        for _ in range(size - 1):
            c = poly.rotate(c, -1)
            path.append(c)
        if not ring.replace_edge(s, poly.rotate(s, 1), path):
            raise InvariantError(
                f"occupied edge {poly.encode(s)} / {poly.encode(poly.rotate(s, 1))} missing at step {step}")
        covered += size
        if audit:
            walked = ring.walk(root.rep)
            if len(walked) != covered or len(set(walked)) != covered:
                raise InvariantError(f"ring broken after step {step}")

    if covered != len(part.index):
        raise InvariantError(f"cycle covers {covered} of {len(part.index)} triangulations")
    seq = normalize_cycle(poly, ring.walk(root.rep))
    return HamiltonianCycle(part.n, seq)


def _audit_active(poly, ring, tree, by_child, position, step):
    # edge {S, r(S)} of bridge k must be in the ring while parent(k) <= step-1 < k
    for k in range(step, len(tree.order)):
        child = tree.order[k]
        if position[tree.parent[child]] <= step - 1:
            s = by_child[child].a
            if not ring.has_edge(s, poly.rotate(s, 1)):
                raise InvariantError(f"active edge of orbit {child} lost before step {step}")


@dataclass
class Pipeline:
    """Every intermediate object of one construction, for inspection and certification."""

    n: int
    partition: OrbitPartition
    guide: Optional[object]
    tree: Optional[OrbitTree]
    factor: Optional[AugmentedFactor]
    cycle: HamiltonianCycle


def run_pipeline(n: int, audit: bool = False) -> Pipeline:
    _check_size(n)
    part = orbit_partition(n)
    if n == 5:
        poly = polygon(5)
        (orbit,) = part.orbits
        cycle = HamiltonianCycle(5, normalize_cycle(poly, list(orbit.members)))
        return Pipeline(n, part, None, None, None, cycle)
    guide = build_guide_cycle(n)
    tree = build_orbit_tree(guide, part)
    factor = select_bridges(tree, part)
    cycle = splice(part, tree, factor, audit=audit)
    return Pipeline(n, part, guide, tree, factor, cycle)


def build_hamiltonian(n: int) -> HamiltonianCycle:
    """Hamiltonian cycle of KG(T_n), deterministic and normalized."""
    return run_pipeline(n).cycle


def _check_size(n: int) -> None:
    if n == 4:
        raise UnsupportedSizeError(
            "KG(T_4) is a single edge: the square has two disjoint triangulations and no cycle")
    if n < 4:
        raise InvalidSizeError(f"n={n}: need n >= 5")


def expected_length(n: int) -> int:
    return catalan(n - 2)
