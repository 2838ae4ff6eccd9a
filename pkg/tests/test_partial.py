from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import lattice_and_op
from plw.families import builtin, figure, golden_table
from plw.lattice import chain
from plw.partial import (
    PartialBinaryOp,
    apply,
    assoc_directional_axiom,
    commutative_axiom,
    is_associative_directional,
    is_associative_symmetric,
    is_commutative_partial,
    is_monotone_partial,
    is_total,
    monotone_axiom,
    restrict,
    scan,
    total_min,
)


def lbl(L, *names):
    return tuple(L.index(n) for n in names)


class TestApply:
    def test_table1_cells(self):
        T1 = golden_table(1)
        assert apply(T1, 1, 2) == 0
        assert apply(T1, 0, 1) is None

    def test_table5_cell(self):
        assert apply(golden_table(5), 3, 3) == 3

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            PartialBinaryOp.from_rows([[0, 2], [1, 1]])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            PartialBinaryOp.from_rows([[0, 1], [1]])


class TestCommutativity:
    def test_table1(self):
        assert is_commutative_partial(figure("fig1"), golden_table(1)).passed

    def test_total_min(self):
        L = chain(3)
        assert is_commutative_partial(L, total_min(L)).passed

    def test_one_sided_blank_gives_minimal_witness(self):
        L = figure("fig1")
        op = golden_table(1).with_cell(4, 0, None)
        res = is_commutative_partial(L, op)
        # oracle: plain pair scan in lexicographic order
        first = next((x, y) for x, y in product(range(5), repeat=2)
                     if op.cells[x][y] is not None and op.cells[y][x] != op.cells[x][y])
        assert not res.passed
        assert res.witnesses[0].elements == ("0", "4") == tuple(L.labels[i] for i in first)


class TestAssociativity:
    def test_table2(self):
        assert is_associative_directional(figure("fig2"), golden_table(2)).passed

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_min(self, n):
        L = chain(n)
        assert is_associative_directional(L, total_min(L)).passed

    def test_table3_matches_triple_scan(self):
        c = golden_table(3).cells
        bad = []
        for x, y, z in product(range(5), repeat=3):
            if c[y][z] is not None and c[x][c[y][z]] is not None:
                if c[x][y] is None or c[c[x][y]][z] != c[x][c[y][z]]:
                    bad.append((x, y, z))
        res = is_associative_directional(figure("fig3"), golden_table(3))
        assert res.passed == (not bad)

    def test_symmetric_form_is_stricter(self):
        # (1*0)*0 = 1 is defined but 0*0 is not, so only the "iff" form objects
        L = chain(3)
        op = PartialBinaryOp.from_rows([[None, None, 0], [1, None, 1], [0, 1, 2]])
        assert is_associative_directional(L, op).passed
        res = is_associative_symmetric(L, op)
        assert not res.passed and res.witnesses[0].elements == ("1", "0", "0")


class TestMonotonicity:
    def test_table1(self):
        assert is_monotone_partial(figure("fig1"), golden_table(1)).passed

    def test_constant_bottom(self):
        L = chain(4)
        op = PartialBinaryOp.from_function(4, lambda x, y: 0)
        assert is_monotone_partial(L, op).passed

    def test_reversed_diagonal_fails(self):
        L = chain(2)
        op = PartialBinaryOp.from_rows([[1, 0], [0, 0]])
        assert not is_monotone_partial(L, op).passed


class TestTotality:
    def test_tables(self):
        assert not is_total(golden_table(1))
        assert not is_total(golden_table(4))
        assert is_total(total_min(chain(4)))


class TestRestrict:
    def test_ex28_on_half_grid(self):
        B = builtin("grid:ex2.8", {"denominator": 4})
        sub = [B.lattice.index(v) for v in ("0", "1/2", "1")]
        op, dropped = restrict(B.ops["odot"], sub)
        assert op.cells[1][1] == 1
        assert dropped == []

    def test_ex26_quarter_grid_cell_undefined(self):
        B = builtin("grid:ex2.6", {"denominator": 4})
        L = B.lattice
        assert B.ops["odot"](*lbl(L, "1/4", "1/2")) is None

    def test_full_set_is_identity(self):
        T = golden_table(1)
        op, dropped = restrict(T, range(5))
        assert op == T and dropped == []

    def test_values_outside_are_reported(self):
        T = golden_table(1)
        op, dropped = restrict(T, [1, 2, 4])
        # 1*2 = 0 is not kept
        assert (1, 2) in dropped and op.cells[0][1] is None


class TestPartialProperties:
    @given(lattice_and_op(), st.data())
    def test_commutativity_survives_restriction(self, Lop, data):
        L, op = Lop
        if not is_commutative_partial(L, op).passed:
            return
        sub = data.draw(st.lists(st.integers(0, L.n - 1), min_size=1, unique=True))
        small, _ = restrict(op, sub)
        assert is_commutative_partial(chain(len(sub)), small).passed

    @given(lattice_and_op(p_undef=False))
    def test_total_directional_is_plain_associativity(self, Lop):
        L, op = Lop
        c = op.cells
        plain = all(c[c[x][y]][z] == c[x][c[y][z]] for x, y, z in product(range(L.n), repeat=3))
        assert is_associative_directional(L, op).passed == plain

    @given(lattice_and_op())
    def test_witness_replay(self, Lop):
        L, op = Lop
        for ax in (commutative_axiom(op), assoc_directional_axiom(op), monotone_axiom(L, op)):
            res = scan(L, ax)
            if not res.passed:
                t = tuple(L.index(e) for e in res.witnesses[0].elements)
                assert not ax.pred(*t)
                # minimality: nothing earlier fails
                assert all(ax.pred(*u) for u in product(range(L.n), repeat=ax.arity) if u < t)
