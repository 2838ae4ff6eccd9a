from __future__ import annotations

import pytest
from hypothesis import given

from conftest import lattices
from plw.errors import MissingBound, NotAPoset, UnknownElement
from plw.families import FIGURES, figure
from plw.lattice import atoms_below, build_lattice, chain, dual_lattice, interval_is_chain, relabel

DIAMOND = (["0", "1", "2", "3"], [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3")])


class TestBuildLattice:
    def test_two_chain(self):
        L = build_lattice(["0", "1"], [("0", "1")])
        assert (L.label(L.bottom), L.label(L.top)) == ("0", "1")
        assert L.is_chain()

    def test_diamond_meet_join(self):
        L = build_lattice(*DIAMOND)
        assert L.label(L.meet[1][2]) == "0"
        assert L.label(L.join[1][2]) == "3"

    def test_missing_top(self):
        with pytest.raises(MissingBound):
            build_lattice(["0", "1", "2"], [("0", "1"), ("0", "2")])

    def test_antisymmetry_violation(self):
        with pytest.raises(NotAPoset):
            build_lattice(["0", "1", "2"], [("0", "1"), ("1", "0"), ("1", "2")])

    def test_no_join_of_two_upper_covers(self):
        # 1 and 2 have upper bounds 3 and 4 but no least one
        pairs = [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3"), ("1", "4"), ("2", "4"), ("3", "5"), ("4", "5")]
        with pytest.raises(MissingBound):
            build_lattice([str(i) for i in range(6)], pairs)

    def test_unknown_label_in_pair(self):
        with pytest.raises(UnknownElement):
            build_lattice(["0", "1"], [("0", "x")])

    def test_closure_is_taken(self):
        L = build_lattice(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert L.le(L.index("a"), L.index("c"))

    def test_single_point(self):
        L = build_lattice(["z"], [])
        assert L.bottom == L.top == 0

    def test_index_rejects_unknown(self):
        with pytest.raises(UnknownElement):
            chain(3).index("7")


class TestIntervalsAndAtoms:
    def test_diamond_top_interval_not_chain(self):
        L = build_lattice(*DIAMOND)
        assert not interval_is_chain(L, L.top)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_chain_intervals(self, n):
        L = chain(n)
        assert all(interval_is_chain(L, x) for x in range(n))

    def test_pentagon_top_interval_by_pair_scan(self):
        L = figure("fig1")
        down = L.down_set(L.top)
        oracle = all(L.comparable(x, y) for x in down for y in down)
        assert interval_is_chain(L, L.top) == oracle
        assert oracle is False
        assert interval_is_chain(L, L.index("2"))

    def test_atoms(self):
        assert atoms_below(chain(2), 1) == [1]
        D = build_lattice(*DIAMOND)
        assert atoms_below(D, D.top) == [1, 2]
        L = chain(3, ["0", "a", "1"])
        assert [L.label(a) for a in atoms_below(L, L.top)] == ["a"]

    def test_no_atoms_below_bottom(self):
        assert atoms_below(chain(3), 0) == []


class TestDual:
    def test_two_chain_swaps_bounds(self):
        L = chain(2)
        D = dual_lattice(L)
        assert (D.bottom, D.top) == (L.top, L.bottom)

    def test_involution_on_diamond(self):
        L = build_lattice(*DIAMOND)
        assert dual_lattice(dual_lattice(L)).same_order(L)

    def test_fig5_dual_matches_rebuilt_reversal(self):
        labels, pairs = FIGURES["fig5"]
        rebuilt = build_lattice(labels, [(b, a) for a, b in pairs])
        assert dual_lattice(figure("fig5")).same_order(rebuilt)

    def test_relabel_keeps_order(self):
        L = relabel(chain(3), ["x", "y", "z"])
        assert L.labels == ("x", "y", "z") and L.le(0, 2)


class TestLatticeProperties:
    @given(lattices())
    def test_meet_is_greatest_lower_bound(self, L):
        for x in range(L.n):
            for y in range(L.n):
                m = L.meet[x][y]
                assert L.le(m, x) and L.le(m, y)
                assert all(L.le(z, m) for z in range(L.n) if L.le(z, x) and L.le(z, y))

    @given(lattices())
    def test_join_is_least_upper_bound(self, L):
        for x in range(L.n):
            for y in range(L.n):
                j = L.join[x][y]
                assert L.le(x, j) and L.le(y, j)
                assert all(L.le(j, z) for z in range(L.n) if L.le(x, z) and L.le(y, z))

    @given(lattices())
    def test_bounds(self, L):
        assert all(L.le(L.bottom, x) and L.le(x, L.top) for x in range(L.n))
        assert L.n == 1 or L.bottom != L.top

    @given(lattices())
    def test_dual_involution(self, L):
        assert dual_lattice(dual_lattice(L)).same_order(L)

    @given(lattices())
    def test_covers_generate_order(self, L):
        rebuilt = build_lattice(L.labels, L.order_pairs())
        assert rebuilt.same_order(L)

    @pytest.mark.parametrize("name", sorted(FIGURES))
    def test_figures_have_unique_bounds(self, name):
        L = figure(name)
        assert [x for x in range(L.n) if all(L.le(x, y) for y in range(L.n))] == [L.bottom]
        assert [x for x in range(L.n) if all(L.le(y, x) for y in range(L.n))] == [L.top]
