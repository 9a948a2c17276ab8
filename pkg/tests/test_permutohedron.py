from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from kneserham.errors import PreconditionError, TooSmallError
from kneserham.permutohedron import (clique_path, coset_cliques, coset_of, count_indecomposable, decomposable_bound,
                                     density_report, differ_by_adjacent_transposition, is_indecomposable,
                                     kg_perm_adjacent, kg_perm_adjacent_by_quotient, perm_hamiltonian_cycle, rho,
                                     sjt_cycle)


class TestAdjacency:
    def test_common_fixed_prefix(self):
        assert not kg_perm_adjacent((1, 2, 3), (1, 3, 2))

    def test_adjacent_pair(self):
        assert kg_perm_adjacent((2, 3, 1), (2, 1, 3))

    def test_self(self):
        for p in permutations(range(1, 5)):
            assert not kg_perm_adjacent(p, p)

    def test_size_mismatch(self):
        with pytest.raises(PreconditionError):
            kg_perm_adjacent((1, 2), (1, 2, 3))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_quotient_form_equals_preimage_form(self, n):
        perms = list(permutations(range(1, n + 1)))
        for s in perms:
            for t in perms:
                ref = oracles.preimage_adjacent(s, t)
                assert kg_perm_adjacent(s, t) == ref
                assert kg_perm_adjacent_by_quotient(s, t) == ref

    @settings(max_examples=300, deadline=None)
    @given(st.permutations(range(1, 8)), st.permutations(range(1, 8)))
    def test_quotient_form_sampled_n7(self, s, t):
        assert kg_perm_adjacent_by_quotient(tuple(s), tuple(t)) == oracles.preimage_adjacent(s, t)


class TestIndecomposable:
    def test_decomposable_example(self):
        assert not is_indecomposable((1, 3, 2))

    @pytest.mark.parametrize("n,value", [(3, 3), (4, 13)])
    def test_small_values(self, n, value):
        assert count_indecomposable(n) == value
        assert sum(1 for p in permutations(range(1, n + 1))
                   if not any(set(p[:k]) == set(range(1, k + 1)) for k in range(1, n))) == value

    @pytest.mark.parametrize("n", range(1, 9))
    def test_recurrence_vs_filter(self, n):
        ref = sum(1 for p in permutations(range(1, n + 1))
                  if not any(max(p[:k]) == k for k in range(1, n)))
        assert count_indecomposable(n) == ref

    @pytest.mark.parametrize("n", range(2, 11))
    def test_decomposable_bound(self, n):
        assert factorial(n) - count_indecomposable(n) <= decomposable_bound(n)


class TestCliques:
    @pytest.mark.parametrize("n", range(3, 7))
    def test_cosets_are_cliques(self, n):
        cliques = coset_cliques(n)
        assert len(cliques) == factorial(n - 1)
        assert len({p for c in cliques for p in c.members}) == factorial(n)
        for c in cliques:
            for i, a in enumerate(c.members):
                for b in c.members[i + 1:]:
                    assert oracles.preimage_adjacent(a, b)

    @pytest.mark.parametrize("n", range(3, 8))
    def test_unique_marking(self, n):
        for p in permutations(range(1, n + 1)):
            c = coset_of(p)
            assert p in c.members
            assert [q for q in c.members if q[-1] == n] == [c.marking]

    def test_rho(self):
        assert rho(4) == (2, 3, 4, 1)

    def test_clique_path_ends(self):
        path = clique_path((2, 1, 3, 4))
        assert path[0] == (2, 1, 3, 4)
        assert path[-1][-1] == 1
        assert len(set(path)) == 4


class TestSJT:
    def test_three(self):
        assert sjt_cycle(3) == [(1, 2, 3), (1, 3, 2), (3, 1, 2), (3, 2, 1), (2, 3, 1), (2, 1, 3)]

    @pytest.mark.parametrize("m", range(3, 8))
    def test_adjacent_transpositions(self, m):
        seq = sjt_cycle(m)
        assert len(seq) == factorial(m) == len(set(seq))
        assert set(seq) == set(permutations(range(1, m + 1)))
        assert oracles.hamiltonian_cycle_in(seq, differ_by_adjacent_transposition)

    @pytest.mark.parametrize("m", [1, 2])
    def test_too_small(self, m):
        with pytest.raises(TooSmallError):
            sjt_cycle(m)


class TestPermCycle:
    def test_three(self):
        seq = perm_hamiltonian_cycle(3)
        assert seq == [(1, 2, 3), (3, 1, 2), (2, 3, 1), (2, 1, 3), (1, 3, 2), (3, 2, 1)]
        assert oracles.preimage_adjacent((2, 3, 1), (2, 1, 3))
        assert oracles.preimage_adjacent((3, 2, 1), (1, 2, 3))

    @pytest.mark.parametrize("n", range(3, 8))
    def test_valid(self, n):
        seq = perm_hamiltonian_cycle(n)
        assert len(seq) == factorial(n)
        assert set(seq) == set(permutations(range(1, n + 1)))
        assert oracles.hamiltonian_cycle_in(seq, oracles.preimage_adjacent)

    @pytest.mark.parametrize("n", range(3, 8))
    def test_junctions(self, n):
        seq = perm_hamiltonian_cycle(n)
        for i in range(n - 1, len(seq), n):
            a, b = seq[i], seq[(i + 1) % len(seq)]
            assert a[-1] == 1 and b[-1] == n
            assert kg_perm_adjacent(a, b)

    def test_too_small(self):
        with pytest.raises(TooSmallError):
            perm_hamiltonian_cycle(2)


class TestDensity:
    def test_four(self):
        r = density_report(4, 1)
        assert (r.indecomposable, r.total, r.threshold) == (13, 24, 12)
        assert r.threshold_met

    def test_three_not_strict(self):
        r = density_report(3, 1)
        assert r.indecomposable == r.threshold == 3
        assert not r.threshold_met

    def test_eight(self):
        r = density_report(8, 3)
        assert r.ratio == Fraction(29093, 40320)
        assert "I(n)=29093" in r.render()

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_monotone(self, k):
        reports = [density_report(n, k) for n in range(2, 16)]
        ratios = [r.ratio for r in reports]
        assert ratios == sorted(ratios)
        met = [r.threshold_met for r in reports]
        assert met == sorted(met)
