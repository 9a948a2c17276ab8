from collections import Counter
from itertools import combinations

import pytest

import oracles
from kneserham.errors import TooSmallError
from kneserham.guide import (backtracking_flip_cycle, build_guide_cycle, check_flip_cycle,
                             flip_hamiltonian_cycle)
from kneserham.orbits import all_ears, orbit_partition
from kneserham.polygon import polygon


def as_sets(poly, seq):
    return [frozenset(poly.diagonals_of(c)) for c in seq]


class TestFlipCycle:
    def test_pentagon(self):
        assert flip_hamiltonian_cycle(5).encodings() == ["1-3,1-4", "1-3,3-5", "2-5,3-5", "2-4,2-5", "1-4,2-4"]

    @pytest.mark.parametrize("m", range(5, 12))
    def test_against_oracle(self, m):
        cyc = flip_hamiltonian_cycle(m)
        seq = as_sets(cyc.polygon, cyc.seq)
        assert len(seq) == oracles.catalan_closed(m - 2)
        assert set(seq) <= set(oracles.triangulations(m)) if m <= 9 else True
        assert oracles.hamiltonian_cycle_in(seq, oracles.flip_adjacent)

    @pytest.mark.parametrize("m,length", [(6, 14), (13, 58786), (14, 208012)])
    def test_lengths(self, m, length):
        assert len(flip_hamiltonian_cycle(m).seq) == length

    def test_deterministic(self):
        assert flip_hamiltonian_cycle(10).seq == flip_hamiltonian_cycle(10).seq

    @pytest.mark.parametrize("m", [3, 4])
    def test_too_small(self, m):
        with pytest.raises(TooSmallError):
            flip_hamiltonian_cycle(m)

    @pytest.mark.parametrize("m", range(5, 9))
    def test_backtracking_cross_check(self, m):
        poly = polygon(m)
        built = flip_hamiltonian_cycle(m)
        searched = backtracking_flip_cycle(m)
        assert check_flip_cycle(poly, built.seq) is None
        assert check_flip_cycle(poly, searched.seq) is None
        assert set(built.seq) == set(searched.seq)

    def test_checker_catches_defects(self):
        poly = polygon(6)
        seq = list(flip_hamiltonian_cycle(6).seq)
        assert check_flip_cycle(poly, seq[:-1]).startswith("length")
        seq[3], seq[7] = seq[7], seq[3]
        assert "not flip-adjacent" in check_flip_cycle(poly, seq)


class TestGuide:
    def test_hexagon(self):
        guide = build_guide_cycle(6)
        assert guide.encodings() == ["1-5,2-5,3-5", "1-5,2-4,2-5", "1-4,1-5,2-4", "1-3,1-4,1-5", "1-3,1-5,3-5"]
        assert all_ears(guide.polygon, guide.seq[-1])

    def test_heptagon(self):
        guide = build_guide_cycle(7)
        assert len(guide.seq) == 14
        assert all((1, 6) in guide.polygon.diagonals_of(c) for c in guide.seq)

    @pytest.mark.parametrize("n", [4, 5])
    def test_too_small(self, n):
        with pytest.raises(TooSmallError):
            build_guide_cycle(n)

    @pytest.mark.parametrize("n", range(6, 13))
    def test_contract(self, n):
        guide = build_guide_cycle(n)
        poly = guide.polygon
        seq = as_sets(poly, guide.seq)
        assert len(seq) == oracles.catalan_closed(n - 3)
        assert all((1, n - 1) in t for t in seq)
        assert oracles.hamiltonian_cycle_in(seq, oracles.flip_adjacent)
        if n <= 8:
            assert all(a & b for a, b in combinations(seq, 2))
        else:
            assert all(seq[i] & seq[(i * 7 + 3) % len(seq)] for i in range(len(seq)))
        part = orbit_partition(n)
        hits = Counter(part.orbit_id(c) for c in guide.seq)
        assert set(hits) == set(range(len(part.orbits)))
        for o in part.orbits:
            assert 2 * hits[o.id] <= o.size

    def test_starts_at_smallest_member(self):
        guide = build_guide_cycle(8)
        key = guide.polygon.sort_key
        assert guide.seq[0] == min(guide.seq, key=key)
        assert key(guide.seq[1]) < key(guide.seq[-1])
