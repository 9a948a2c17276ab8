"""Hamiltonian cycles of the flip graph and the guide cycle built from them.

The flip-graph cycle is grown one vertex at a time.  Splitting vertex 1 of
an m-gon triangulation into the pair (m+1, 1) yields its *children*, a flip
path in Flip(m+1) whose two ends contain the ear {1, m} and {2, m+1}
respectively.  Children of flip-adjacent parents are flip-adjacent at both
ends, so walking the parent cycle and traversing the child paths in
alternating directions gives a Hamiltonian cycle whenever the number of
parents is even.  When it is odd, one short window of consecutive parents is
traversed by an explicit Hamiltonian-path search that enters and leaves on
opposite ends, which flips the parity of the remainder.

Construction works in a size-independent pair layout (bit per vertex pair)
so that the codes of the m-gon are valid codes of the (m+1)-gon.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .errors import InvariantError, TooSmallError
from .polygon import Polygon, catalan, polygon


def _pidx(i: int, j: int) -> int:
    return (j - 1) * (j - 2) // 2 + (i - 1)


def _pbit(i: int, j: int) -> int:
    return 1 << _pidx(i, j)


def _pair_diagonals(code: int) -> List[Tuple[int, int]]:
    out = []
    while code:
        low = code & -code
        p = low.bit_length() - 1
        j = 2
        while (j - 1) * j // 2 <= p:
            j += 1
        i = p - (j - 1) * (j - 2) // 2 + 1
        out.append((i, j))
        code ^= low
    return out


def _children(code: int, m: int) -> List[int]:
    """Child path of an m-gon triangulation in Flip(m+1), ear {1,m} end first."""
    fan = [j for j in range(m - 1, 2, -1) if code >> _pidx(1, j) & 1]
    u = [m] + fan + [2]
    k = len(u) - 1
    rest = code
    for j in fan:
        rest &= ~_pbit(1, j)
    c = rest
    for s in range(k):
        c |= _pbit(1, u[s])
    out = [c]
    for t in range(k):
        c = (c & ~_pbit(1, u[t])) | _pbit(u[t + 1], m + 1)
        out.append(c)
    return out


def _adjacent(a: int, b: int) -> bool:
    return bin(a ^ b).count("1") == 2


def _window_path(paths: Sequence[List[int]], start: int, end: int,
                 limit: int = 200000) -> Optional[List[int]]:
    """Hamiltonian path from start to end through all codes of ``paths``."""
    nodes = [c for p in paths for c in p]
    nbrs = {c: [d for d in nodes if d != c and _adjacent(c, d)] for c in nodes}
    total = len(nodes)
    path = [start]
    seen = {start}
    budget = [limit]

    def dfs(v):
        if len(path) == total:
            return v == end
        budget[0] -= 1
        if budget[0] < 0:
            return False
        for w in nbrs[v]:
            if w in seen or (w == end and len(path) != total - 1):
                continue
            seen.add(w)
            path.append(w)
            if dfs(w):
                return True
            path.pop()
            seen.discard(w)
        return False

    return list(path) if dfs(start) else None


def _extend(parents: List[int], m: int) -> List[int]:
    """Hamiltonian cycle of Flip(m+1) from one of Flip(m), pair layout."""
    paths = [_children(c, m) for c in parents]
    count = len(paths)

    def oriented(i, forward):
        return paths[i] if forward else paths[i][::-1]

    if count % 2 == 0:
        out = []
        for i in range(count):
            out.extend(oriented(i, i % 2 == 0))
        return out

    for width in range(2, 7):
        for a in range(count - width + 1):
            b = a + width - 1
            start = paths[a][0] if a % 2 == 0 else paths[a][-1]
            end = paths[b][0] if b % 2 == 0 else paths[b][-1]
            middle = _window_path(paths[a:b + 1], start, end)
            if middle is None:
                continue
            out = []
            for i in range(a):
                out.extend(oriented(i, i % 2 == 0))
            out.extend(middle)
            for i in range(b + 1, count):
                out.extend(oriented(i, i % 2 == 1))
            return out
    raise InvariantError(f"no parity-fixing window found while extending Flip({m})")


@lru_cache(maxsize=None)
def _raw_cycle(m: int) -> Tuple[int, ...]:
    if m == 4:
        return (_pbit(1, 3), _pbit(2, 4))
    return tuple(_extend(list(_raw_cycle(m - 1)), m - 1))


def normalize_cycle(poly: Polygon, seq: Sequence[int]) -> List[int]:
    """Start at the canonically smallest entry, head toward the smaller neighbour."""
    seq = list(seq)
    if not seq:
        return seq
    key = poly.sort_key
    i = min(range(len(seq)), key=lambda k: key(seq[k]))
    nxt = seq[(i + 1) % len(seq)]
    prv = seq[i - 1]
    if len(seq) > 2 and key(prv) < key(nxt):
        seq = seq[::-1]
        i = len(seq) - 1 - i
    return seq[i:] + seq[:i]


@dataclass
class FlipHamCycle:
    m: int
    seq: List[int]

    @property
    def polygon(self) -> Polygon:
        return polygon(self.m)

    def encodings(self) -> List[str]:
        return [self.polygon.encode(c) for c in self.seq]


def check_flip_cycle(poly: Polygon, seq: Sequence[int]) -> Optional[str]:
    """Return a description of the first defect, or None when ``seq`` is a Hamiltonian cycle."""
    expected = poly.count()
    if len(seq) != expected:
        return f"length {len(seq)} != {expected}"
    if len(set(seq)) != len(seq):
        return "repeated triangulation"
    rank = poly.rank_table()
    for c in seq:
        if c not in rank:
            return f"not a triangulation: {poly.encode(c)}"
    for k in range(len(seq)):
        a, b = seq[k], seq[(k + 1) % len(seq)]
        if not poly.is_flip_adjacent(a, b):
            return f"positions {k},{(k + 1) % len(seq)} not flip-adjacent: {poly.encode(a)} / {poly.encode(b)}"
    return None


def flip_hamiltonian_cycle(m: int) -> FlipHamCycle:
    """A verified Hamiltonian cycle of Flip(m), normalized."""
    if m < 5:
        raise TooSmallError(f"Flip({m}) has no Hamiltonian cycle; need m >= 5")
    poly = polygon(m)
    bit = poly.bit
    converted = []
    for code in _raw_cycle(m):
        c = 0
        for d in _pair_diagonals(code):
            c |= bit(d)
        converted.append(c)
    seq = normalize_cycle(poly, converted)
    defect = check_flip_cycle(poly, seq)
    if defect:
        raise InvariantError(f"Flip({m}) cycle failed self-check: {defect}")
    return FlipHamCycle(m, seq)


def backtracking_flip_cycle(m: int) -> FlipHamCycle:
    """Exhaustive search for a Hamiltonian cycle of Flip(m).  Cross-check only, m <= 8."""
    if m < 5:
        raise TooSmallError(f"Flip({m}) has no Hamiltonian cycle; need m >= 5")
    if m > 8:
        raise TooSmallError("backtracking search is limited to m <= 8")
    poly = polygon(m)
    codes = poly.all_codes()
    nbrs = {c: sorted(poly.flip_neighbours(c), key=poly.sort_key) for c in codes}
    start = codes[0]
    total = len(codes)
    path = [start]
    seen = {start}

    def free_degree(v):
        return sum(1 for w in nbrs[v] if w not in seen)

    def stranded(v, w):
        # an unvisited vertex next to the old tip needs two ways in/out, counting the new tip and the start
        if len(path) == total:
            return False
        if not any(x not in seen or x == w for x in nbrs[start]):
            return True
        for u in nbrs[v]:
            if u in seen:
                continue
            ways = sum(1 for x in nbrs[u] if x not in seen or x == w or x == start)
            if ways < 2:
                return True
        return False

    def dfs(v):
        if len(path) == total:
            return start in nbrs[v]
        for w in sorted((w for w in nbrs[v] if w not in seen), key=free_degree):
            seen.add(w)
            path.append(w)
            if not stranded(v, w) and dfs(w):
                return True
            path.pop()
            seen.discard(w)
        return False

    if not dfs(start):
        raise InvariantError(f"Flip({m}) search found no Hamiltonian cycle")
    return FlipHamCycle(m, normalize_cycle(poly, path))


@dataclass
class GuideCycle:
    n: int
    seq: List[int]

    @property
    def polygon(self) -> Polygon:
        return polygon(self.n)

    def encodings(self) -> List[str]:
        return [self.polygon.encode(c) for c in self.seq]


def build_guide_cycle(n: int) -> GuideCycle:
    """Flip(n-1) cycle with the ear {1, n-1} appended to every member."""
    if n < 6:
        raise TooSmallError(f"guide cycle needs n >= 6, got {n}")
    base = flip_hamiltonian_cycle(n - 1)
    poly = polygon(n)
    ear = poly.bit((1, n - 1))
    seq = [poly.code(base.polygon.diagonals_of(c)) | ear for c in base.seq]
    seq = normalize_cycle(poly, seq)
    if n == 6:
        # the all-ears member must come last so its orbit never becomes a parent
        from .orbits import all_ears
        k = next(i for i, c in enumerate(seq) if all_ears(poly, c))
        seq = seq[k + 1:] + seq[:k + 1]
    return GuideCycle(n, seq)


def guide_length(n: int) -> int:
    return catalan(n - 3)
