"""Diagonals and triangulations of the labeled convex n-gon.

Vertices are labeled 1..n clockwise.  A diagonal is a pair ``(i, j)`` with
``i < j`` whose endpoints are not neighbours on the boundary.  A
triangulation is a set of ``n - 3`` pairwise noncrossing diagonals.

Two representations are used:

* :class:`Triangulation`, a small frozen value carrying ``n`` and the sorted
  diagonal tuple.  This is what the public functions take and return.
* an integer *code*, produced by :class:`Polygon`.  Codes lay the diagonals
  out in blocks by length so that rotating a triangulation is a cyclic shift
  inside every block and disjointness is a single ``&``.  The pipeline runs on
  codes because it has to touch every one of the ``C_{n-2}`` triangulations
  many times.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Tuple, Union

from .errors import DecodeError, InvalidSizeError, NotPresentError, PreconditionError

Diagonal = Tuple[int, int]


@lru_cache(maxsize=None)
def catalan(m: int) -> int:
    """Catalan number via the convolution recurrence."""
    if m < 0:
        raise ValueError("negative index")
    if m == 0:
        return 1
    return sum(catalan(i) * catalan(m - 1 - i) for i in range(m))


def normalize(d: Sequence[int], n: int) -> Diagonal:
    """Reduce labels into 1..n and order them; raise if not a diagonal."""
    a, b = d
    a = (a - 1) % n + 1
    b = (b - 1) % n + 1
    if a > b:
        a, b = b, a
    if not is_diagonal((a, b), n):
        raise DecodeError(f"{a}-{b} is not a diagonal of the {n}-gon")
    return (a, b)


def is_diagonal(d: Diagonal, n: int) -> bool:
    i, j = d
    return 1 <= i < j <= n and 2 <= j - i <= n - 2


def crosses(d1: Diagonal, d2: Diagonal) -> bool:
    """True iff the two chords interleave strictly; a shared endpoint never crosses."""
    a, b = d1
    c, d = d2
    if a > b:
        a, b = b, a
    if c > d:
        c, d = d, c
    return a < c < b < d or c < a < d < b


def length(d: Diagonal, n: int) -> int:
    """Number of boundary steps along the shorter side."""
    k = d[1] - d[0]
    return min(k, n - k)


def is_ear(d: Diagonal, n: int) -> bool:
    return length(d, n) == 2


@dataclass(frozen=True, order=True)
class Triangulation:
    n: int
    diagonals: Tuple[Diagonal, ...]

    def __str__(self) -> str:
        return encode(self)

    def __contains__(self, d) -> bool:
        return tuple(d) in self.diagonals


def make_triangulation(n: int, diagonals: Iterable[Sequence[int]]) -> Triangulation:
    """Validate and build a triangulation from any iterable of label pairs."""
    if n < 3:
        raise InvalidSizeError(f"n={n}: a polygon needs at least 3 vertices")
    diags = sorted({normalize(d, n) for d in diagonals})
    if len(diags) != n - 3:
        raise DecodeError(f"a triangulation of the {n}-gon has {n - 3} diagonals, got {len(diags)}")
    for d1, d2 in combinations(diags, 2):
        if crosses(d1, d2):
            raise DecodeError(f"diagonals {d1[0]}-{d1[1]} and {d2[0]}-{d2[1]} cross")
    return Triangulation(n, tuple(diags))


def encode(t: Triangulation) -> str:
    return ",".join(f"{i}-{j}" for i, j in t.diagonals)


def decode(text: str, n: int) -> Triangulation:
    text = text.strip()
    pairs = []
    if text:
        for token in text.split(","):
            parts = token.strip().split("-")
            if len(parts) != 2:
                raise DecodeError(f"malformed diagonal {token!r}")
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise DecodeError(f"malformed diagonal {token!r}") from None
    for i, j in pairs:
        if not (1 <= i <= n and 1 <= j <= n):
            raise DecodeError(f"label out of range in {i}-{j}")
        if i >= j:
            raise DecodeError(f"diagonal {i}-{j} is not written as i<j")
    if len(set(pairs)) != len(pairs):
        raise DecodeError("repeated diagonal")
    return make_triangulation(n, pairs)


def _rotate_diagonal(d: Diagonal, k: int, n: int) -> Diagonal:
    a = (d[0] + k - 1) % n + 1
    b = (d[1] + k - 1) % n + 1
    return (a, b) if a < b else (b, a)


def rotate(x: Union[Diagonal, Triangulation], k: int, n: int = None):
    """Apply the rotation i -> i+k (labels kept in 1..n)."""
    if isinstance(x, Triangulation):
        return Triangulation(x.n, tuple(sorted(_rotate_diagonal(d, k, x.n) for d in x.diagonals)))
    if n is None:
        raise TypeError("rotating a bare diagonal needs n")
    return _rotate_diagonal(tuple(x), k, n)


def _apexes(diags: Iterable[Diagonal], d: Diagonal, n: int) -> Tuple[int, int]:
    edges = set(diags)
    i, j = d

    def edge(a, b):
        if a > b:
            a, b = b, a
        return b - a == 1 or (a == 1 and b == n) or (a, b) in edges

    inner = [v for v in range(i + 1, j) if edge(i, v) and edge(v, j)]
    outer = [v for v in range(1, n + 1) if not i <= v <= j and edge(i, v) and edge(v, j)]
    if len(inner) != 1 or len(outer) != 1:
        raise PreconditionError(f"{i}-{j} does not bound exactly two triangles")
    return inner[0], outer[0]


def flip(t: Triangulation, d: Sequence[int]) -> Triangulation:
    """Replace ``d`` by the other diagonal of the quadrilateral around it."""
    d = tuple(d)
    if d not in t.diagonals:
        raise NotPresentError(f"{d[0]}-{d[1]} is not in {encode(t)}")
    u, v = _apexes(t.diagonals, d, t.n)
    new = (min(u, v), max(u, v))
    return Triangulation(t.n, tuple(sorted([e for e in t.diagonals if e != d] + [new])))


def are_disjoint(t: Triangulation, u: Triangulation) -> bool:
    if t.n != u.n:
        raise PreconditionError(f"size mismatch: {t.n} vs {u.n}")
    return not set(t.diagonals) & set(u.diagonals)


def is_flip_adjacent(t: Triangulation, u: Triangulation) -> bool:
    return t.n == u.n and len(set(t.diagonals) ^ set(u.diagonals)) == 2


def enumerate_triangulations(n: int) -> Iterator[Triangulation]:
    """Every triangulation once, ascending in canonical order."""
    if n < 3:
        raise InvalidSizeError(f"n={n}: need n >= 3")
    poly = polygon(n)
    for code in poly.all_codes():
        yield poly.triangulation(code)


def brute_force_triangulations(n: int) -> list:
    """All (n-3)-subsets of diagonals that are pairwise noncrossing.  Oracle only."""
    diags = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if is_diagonal((i, j), n)]
    out = []
    for subset in combinations(diags, n - 3):
        if not any(crosses(a, b) for a, b in combinations(subset, 2)):
            out.append(Triangulation(n, subset))
    return out


class Polygon:
    """Bit layout and code-level primitives for one polygon size.

    Diagonals of length ``l`` (2 <= l <= n//2) occupy block ``l - 2`` of ``n``
    bits; bit ``s - 1`` of the block is the diagonal from ``s`` to ``s + l``.
    A diameter (``2l == n``) is written to both of its start positions so that
    a plain block rotation keeps it consistent.
    """

    def __init__(self, n: int):
        if n < 3:
            raise InvalidSizeError(f"n={n}: need n >= 3")
        self.n = n
        self.nblocks = max(0, n // 2 - 1)
        self.width = self.nblocks * n
        self.diagonals = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
                          if is_diagonal((i, j), n)]
        self._bit = {}
        self._pos_diag = [None] * self.width
        for d in self.diagonals:
            i, j = d
            span = j - i
            if span <= n - span:
                l, s = span, i
            else:
                l, s = n - span, j
            base = (l - 2) * n
            bits = 1 << (base + s - 1)
            self._pos_diag[base + s - 1] = d
            if 2 * l == n:
                # s <= n/2 here, so the first copy is the one decoded
                bits |= 1 << (base + s - 1 + l)
            self._bit[d] = bits
        self._lo = []
        self._hi = []
        for k in range(n):
            lo = hi = 0
            for b in range(self.nblocks):
                block_lo = ((1 << (n - k)) - 1) << (b * n)
                lo |= block_lo
                hi |= (((1 << n) - 1) << (b * n)) & ~block_lo
            self._lo.append(lo)
            self._hi.append(hi)
        # byte tables turning a code into an integer whose descending order is
        # the canonical (lexicographic) order of diagonal tuples
        rank = {d: r for r, d in enumerate(self.diagonals)}
        top = len(self.diagonals) - 1
        self._key_tables = []
        for byte in range((self.width + 7) // 8):
            table = [0] * 256
            for value in range(1, 256):
                low = value & -value
                p = byte * 8 + low.bit_length() - 1
                extra = 0
                if p < self.width and self._pos_diag[p] is not None:
                    extra = 1 << (top - rank[self._pos_diag[p]])
                table[value] = table[value & (value - 1)] | extra
            self._key_tables.append(table)
        self._codes = None
        self._rank = None

    # -- conversion -------------------------------------------------------

    def bit(self, d: Diagonal) -> int:
        return self._bit[d]

    def code(self, diagonals: Iterable[Diagonal]) -> int:
        c = 0
        bit = self._bit
        for d in diagonals:
            c |= bit[d]
        return c

    def code_of(self, t: Triangulation) -> int:
        if t.n != self.n:
            raise PreconditionError(f"triangulation of the {t.n}-gon given to the {self.n}-gon")
        return self.code(t.diagonals)

    def diagonals_of(self, code: int) -> Tuple[Diagonal, ...]:
        out = []
        pos = self._pos_diag
        while code:
            low = code & -code
            d = pos[low.bit_length() - 1]
            if d is not None:
                out.append(d)
            code ^= low
        out.sort()
        return tuple(out)

    def triangulation(self, code: int) -> Triangulation:
        return Triangulation(self.n, self.diagonals_of(code))

    def encode(self, code: int) -> str:
        return ",".join(f"{i}-{j}" for i, j in self.diagonals_of(code))

    def decode(self, text: str) -> int:
        return self.code(decode(text, self.n).diagonals)

    def sort_key(self, code: int) -> int:
        """Ascending sort_key == ascending canonical encoding."""
        k = 0
        tables = self._key_tables
        b = 0
        while code:
            k |= tables[b][code & 0xFF]
            code >>= 8
            b += 1
        return -k

    # -- primitives ---------------------------------------------------------

    def rotate(self, code: int, k: int = 1) -> int:
        n = self.n
        k %= n
        if k == 0:
            return code
        return ((code & self._lo[k]) << k) | ((code & self._hi[k]) >> (n - k))

    def flip(self, code: int, d: Diagonal) -> int:
        diags = self.diagonals_of(code)
        if d not in diags:
            raise NotPresentError(f"{d[0]}-{d[1]} not present")
        u, v = _apexes(diags, d, self.n)
        return (code & ~self._bit[d]) | self._bit[(min(u, v), max(u, v))]

    def flip_neighbours(self, code: int) -> list:
        return [self.flip(code, d) for d in self.diagonals_of(code)]

    def is_flip_adjacent(self, a: int, b: int) -> bool:
        da = set(self.diagonals_of(a))
        db = set(self.diagonals_of(b))
        return len(da ^ db) == 2

    # -- enumeration --------------------------------------------------------

    def all_codes(self) -> list:
        """Every triangulation code, sorted canonically.  Cached."""
        if self._codes is None:
            n = self.n
            bit = self._bit

            @lru_cache(maxsize=None)
            def sub(a, b):
                # triangulations of the sub-polygon a..b sitting on chord (a, b)
                if b - a < 2:
                    return (0,)
                out = []
                for v in range(a + 1, b):
                    left = sub(a, v)
                    right = sub(v, b)
                    extra = 0
                    if v - a >= 2:
                        extra |= bit[(a, v)]
                    if b - v >= 2:
                        extra |= bit[(v, b)]
                    out.extend(x | y | extra for x in left for y in right)
                return tuple(out)

            codes = list(sub(1, n))
            codes.sort(key=self.sort_key)
            self._codes = codes
        return self._codes

    def rank_table(self) -> dict:
        if self._rank is None:
            self._rank = {c: r for r, c in enumerate(self.all_codes())}
        return self._rank

    def count(self) -> int:
        return catalan(self.n - 2)


@lru_cache(maxsize=None)
def polygon(n: int) -> Polygon:
    return Polygon(n)
