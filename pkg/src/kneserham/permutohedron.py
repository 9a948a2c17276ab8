"""Kneser graph of the permutohedron: adjacency, coset cliques, a Hamiltonian cycle, densities.

Permutations are one-line tuples ``p`` with ``p[i-1] = p(i)`` and act on the
left, so ``compose(s, t)`` is "apply t, then s".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, List, Sequence, Tuple

from .errors import InvalidSizeError, PreconditionError, TooSmallError

Perm = Tuple[int, ...]


def compose(s: Sequence[int], t: Sequence[int]) -> Perm:
    return tuple(s[x - 1] for x in t)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p, start=1):
        out[x - 1] = i
    return tuple(out)


def rho(n: int) -> Perm:
    """The n-cycle i -> i+1 (mod n)."""
    return tuple(range(2, n + 1)) + (1,)


def rho_power(n: int, j: int) -> Perm:
    j %= n
    return tuple((i + j - 1) % n + 1 for i in range(1, n + 1))


def _check_same_size(s, t):
    if len(s) != len(t):
        raise PreconditionError(f"permutations of different sizes {len(s)} and {len(t)}")


def kg_perm_adjacent(s: Sequence[int], t: Sequence[int]) -> bool:
    """No k in [n-1] with s^{-1}([k]) == t^{-1}([k]), i.e. the vertices share no facet."""
    _check_same_size(s, t)
    si, ti = inverse(s), inverse(t)
    a = b = 0
    for k in range(len(s) - 1):
        a |= 1 << si[k]
        b |= 1 << ti[k]
        if a == b:
            return False
    return True


def is_indecomposable(p: Sequence[int]) -> bool:
    """No proper prefix [p] mapped onto itself."""
    top = 0
    for i, x in enumerate(p[:-1], start=1):
        top = max(top, x)
        if top == i:
            return False
    return True


def kg_perm_adjacent_by_quotient(s: Sequence[int], t: Sequence[int]) -> bool:
    """Cayley-graph form of adjacency: t o s^{-1} is indecomposable."""
    _check_same_size(s, t)
    return is_indecomposable(compose(t, inverse(s)))


@lru_cache(maxsize=None)
def count_indecomposable(n: int) -> int:
    if n < 1:
        raise InvalidSizeError("n >= 1 required")
    return factorial(n) - sum(count_indecomposable(k) * factorial(n - k) for k in range(1, n))


def brute_force_indecomposable(n: int) -> int:
    from itertools import permutations

    return sum(1 for p in permutations(range(1, n + 1)) if is_indecomposable(p))


def decomposable_bound(n: int) -> Fraction:
    """n! * sum_{p=1}^{n-1} 1/binom(n, p), an upper bound on the decomposable count."""
    return factorial(n) * sum(Fraction(1, comb(n, p)) for p in range(1, n))


# -- coset cliques ----------------------------------------------------------------

@dataclass(frozen=True)
class CosetClique:
    members: Tuple[Perm, ...]    # members[j] = rho^j o marking

    @property
    def marking(self) -> Perm:
        return self.members[0]


def coset_of(p: Sequence[int]) -> CosetClique:
    """The right coset <rho> p, listed from its marking permutation."""
    n = len(p)
    j = (n - p[-1]) % n
    marking = compose(rho_power(n, j), p)
    return CosetClique(tuple(compose(rho_power(n, i), marking) for i in range(n)))


def coset_cliques(n: int) -> List[CosetClique]:
    """All (n-1)! cosets, ordered by marking permutation."""
    from itertools import permutations

    return [CosetClique(tuple(compose(rho_power(n, i), q + (n,)) for i in range(n)))
            for q in permutations(range(1, n))]


# -- cycles -----------------------------------------------------------------------

def sjt_order(m: int) -> List[Perm]:
    """Steinhaus-Johnson-Trotter listing of S_m (largest element sweeps first)."""
    if m < 1:
        raise InvalidSizeError("m >= 1 required")
    perm = list(range(1, m + 1))
    direction = [-1] * (m + 1)      # indexed by value; -1 means facing left
    out = [tuple(perm)]
    pos = {v: i for i, v in enumerate(perm)}
    while True:
        mobile = 0
        for v in range(m, 0, -1):
            i = pos[v]
            j = i + direction[v]
            if 0 <= j < m and perm[j] < v:
                mobile = v
                break
        if not mobile:
            return out
        i = pos[mobile]
        j = i + direction[mobile]
        other = perm[j]
        perm[i], perm[j] = other, mobile
        pos[mobile], pos[other] = j, i
        for v in range(mobile + 1, m + 1):
            direction[v] = -direction[v]
        out.append(tuple(perm))


def sjt_cycle(m: int) -> List[Perm]:
    """All m! permutations, consecutive ones (cyclically) differing by an adjacent transposition."""
    if m <= 2:
        raise TooSmallError(f"S_{m} is too small for a cycle; need m >= 3")
    return sjt_order(m)


def differ_by_adjacent_transposition(p: Sequence[int], q: Sequence[int]) -> bool:
    diff = [i for i in range(len(p)) if p[i] != q[i]]
    return len(diff) == 2 and diff[1] == diff[0] + 1 and p[diff[0]] == q[diff[1]] and p[diff[1]] == q[diff[0]]


def clique_path(marking: Perm) -> List[Perm]:
    """marking, rho^2 marking, ..., rho^{n-1} marking, rho marking."""
    n = len(marking)
    order = [0] + list(range(2, n)) + [1]
    return [compose(rho_power(n, j), marking) for j in order]


def perm_hamiltonian_cycle(n: int) -> List[Perm]:
    """Hamiltonian cycle of KG(Perm_n): coset cliques glued along an SJT cycle of markings."""
    if n <= 2:
        raise TooSmallError(f"KG(Perm_{n}) has no Hamiltonian cycle; need n >= 3")
    out = []
    for q in sjt_order(n - 1):
        out.extend(clique_path(q + (n,)))
    return out


def iter_perm_cycle(n: int) -> Iterator[Perm]:
    if n <= 2:
        raise TooSmallError(f"KG(Perm_{n}) has no Hamiltonian cycle; need n >= 3")
    for q in sjt_order(n - 1):
        yield from clique_path(q + (n,))


# -- density --------------------------------------------------------------------

@dataclass(frozen=True)
class DensityReport:
    n: int
    k: int
    indecomposable: int
    total: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.indecomposable, self.total)

    @property
    def threshold(self) -> Fraction:
        return Fraction(self.k, self.k + 1) * self.total

    @property
    def threshold_met(self) -> bool:
        return self.indecomposable > self.threshold

    def render(self) -> str:
        return (f"perm-density n={self.n} k={self.k}\n"
                f"I(n)={self.indecomposable}\n"
                f"n!={self.total}\n"
                f"ratio={float(self.ratio):.6f}\n"
                f"threshold k/(k+1)*n!={float(self.threshold):.6g}\n"
                f"min-degree above threshold: {'yes' if self.threshold_met else 'no'}")


def density_report(n: int, k: int) -> DensityReport:
    """Minimum degree of KG(Perm_n) versus the k-th power threshold; reports only."""
    if n < 2 or k < 1:
        raise InvalidSizeError("need n >= 2 and k >= 1")
    return DensityReport(n, k, count_indecomposable(n), factorial(n))


def check_perm_cycle(seq: Sequence[Perm], n: int):
    """None when ``seq`` is a Hamiltonian cycle of KG(Perm_n), else (reason, witness)."""
    if len(seq) != factorial(n):
        return ("count", (len(seq), factorial(n)))
    seen = set()
    for i, p in enumerate(seq):
        if sorted(p) != list(range(1, n + 1)):
            return ("not a permutation", (i, p))
        if p in seen:
            return ("repeated", (i, p))
        seen.add(p)
    for i in range(len(seq)):
        a, b = seq[i], seq[(i + 1) % len(seq)]
        if not kg_perm_adjacent(a, b):
            return ("not adjacent", (i, a, b))
    return None
