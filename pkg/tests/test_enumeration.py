from __future__ import annotations

import pytest

from conftest import lattice_shapes
from oracles import naive_ptnorm_count
from plw.checkers import Claim, check_class, check_residuated_lattice
from plw.enumeration import (
    EnumerationTask,
    determined_arrow,
    enumerate_class,
    enumerate_partial_tnorms,
    infer_orders,
    jobs,
)
from plw.errors import BadParams, NoConsistentOrder, UnknownClass
from plw.families import builtin, figure, golden_table
from plw.lattice import chain
from plw.partial import is_total, total_min, goedel_implication

# naive_ptnorm_count(n) for n = 1..4, computed once and frozen
FROZEN_PTNORM_COUNTS = {1: 1, 2: 2, 3: 8, 4: 50}


def count(L, cls, **kw):
    return enumerate_class(EnumerationTask(L, cls, **kw)).count


class TestCounts:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_frozen_chain_counts(self, n):
        assert count(chain(n), "ptnorm") == FROZEN_PTNORM_COUNTS[n]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_oracle_replay(self, n):
        assert naive_ptnorm_count(n) == FROZEN_PTNORM_COUNTS[n]

    @pytest.mark.slow
    def test_oracle_replay_four(self):
        assert naive_ptnorm_count(4) == FROZEN_PTNORM_COUNTS[4]

    def test_chain_five(self):
        assert count(chain(5), "ptnorm") == 423

    def test_two_chain_members(self):
        r = enumerate_class(EnumerationTask(chain(2), "ptnorm"))
        assert [b.ops["otimes"].cells for b in r.bundles] == [((None, 0), (0, 1)), ((0, 0), (0, 1))]

    def test_sprl_chain_counts(self):
        assert [count(chain(n), "sprl") for n in range(1, 6)] == [1, 1, 2, 6, 22]

    def test_tnorm_subset(self):
        for n in range(1, 5):
            assert count(chain(n), "tnorm") <= count(chain(n), "ptnorm")

    def test_tconorm_by_duality(self):
        for n in range(1, 5):
            assert count(chain(n), "ptconorm") == count(chain(n), "ptnorm")

    def test_table1_appears(self):
        r = enumerate_class(EnumerationTask(figure("fig1"), "ptnorm"))
        assert any(b.ops["otimes"] == golden_table(1) for b in r.bundles)


class TestSearchProperties:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_symmetry_reduction_sound(self, n):
        for L in lattice_shapes(n):
            a = enumerate_partial_tnorms(L, symmetry=True)[0]
            b = enumerate_partial_tnorms(L, symmetry=False)[0]
            assert [op.cells for op in a] == [op.cells for op in b]

    @pytest.mark.parametrize("cls", ["ptnorm", "tnorm", "ptconorm", "tconorm", "sprl", "rl"])
    def test_generator_checker_agreement(self, cls):
        for n in range(1, 5):
            for L in lattice_shapes(n):
                for B in enumerate_class(EnumerationTask(L, cls)).bundles:
                    assert check_class(B, B.claims[0]).passed

    def test_sprls_are_residuated_lattices(self):
        for n in range(1, 5):
            for B in enumerate_class(EnumerationTask(chain(n), "sprl")).bundles:
                o, a = B.ops["otimes"], B.ops["arrow"]
                assert is_total(o) and is_total(a)
                assert check_residuated_lattice(B.lattice, o, a).passed

    def test_deterministic(self):
        L = figure("fig1")
        a = enumerate_class(EnumerationTask(L, "ptnorm")).bundles
        b = enumerate_class(EnumerationTask(L, "ptnorm")).bundles
        assert [x.ops["otimes"].cells for x in a] == [x.ops["otimes"].cells for x in b]

    def test_parallel_split_matches(self, monkeypatch):
        L = chain(4)
        serial = enumerate_partial_tnorms(L, workers=1)[0]
        monkeypatch.setenv("PLW_JOBS", "2")
        assert jobs() == 2
        parallel = enumerate_partial_tnorms(L, workers=2)[0]
        assert [op.cells for op in serial] == [op.cells for op in parallel]

    def test_determined_arrow_on_min(self):
        L = chain(3)
        assert determined_arrow(L, total_min(L)) == goedel_implication(L)


class TestTaskValidation:
    def test_cap(self):
        r = enumerate_class(EnumerationTask(chain(4), "ptnorm", cap=10))
        assert r.count == 10 and r.capped

    def test_cap_not_hit(self):
        r = enumerate_class(EnumerationTask(chain(3), "ptnorm", cap=100))
        assert r.count == 8 and not r.capped

    def test_bad_cap(self):
        with pytest.raises(BadParams):
            EnumerationTask(chain(2), "ptnorm", cap=0)

    def test_unknown_class(self):
        with pytest.raises(UnknownClass):
            EnumerationTask(chain(2), "wprl")

    def test_size_bound(self):
        with pytest.raises(BadParams):
            enumerate_class(EnumerationTask(chain(6), "ptnorm"))

    def test_bad_jobs(self, monkeypatch):
        monkeypatch.setenv("PLW_JOBS", "many")
        with pytest.raises(BadParams):
            jobs()


class TestInferOrders:
    def test_goedel_fixes_chain(self):
        L = chain(3)
        orders = infer_orders({"o": total_min(L), "a": goedel_implication(L)}, [Claim("rl", ("o", "a"))], L.labels)
        assert len(orders) == 1 and orders[0].same_order(L)

    def test_tables_9_10(self):
        B = builtin("ex4.20")
        orders = infer_orders(B.ops, B.claims, B.lattice.labels)
        assert all(O.bottom == 0 and O.top == 3 for O in orders)
        assert any(O.same_order(figure("fig4")) for O in orders)

    def test_tables_5_6(self):
        B = builtin("ex4.11")
        orders = infer_orders(B.ops, B.claims, B.lattice.labels)
        assert [O.same_order(figure("fig4")) for O in orders] == [True]

    def test_frozen_order_replays(self):
        for name in ("ex2.11", "ex4.11", "ex4.20", "ex4.21", "ex4.22"):
            B = builtin(name)
            got = infer_orders(B.ops, B.claims, B.lattice.labels, candidates=[B.lattice], best_fit=True)
            assert len(got) == 1 and got[0].same_order(B.lattice)

    def test_no_consistent_order(self):
        B = builtin("ex6.10")
        with pytest.raises(NoConsistentOrder):
            infer_orders(B.ops, B.claims, B.lattice.labels)

    def test_best_fit_keeps_fig4(self):
        B = builtin("ex6.10")
        orders = infer_orders(B.ops, B.claims, B.lattice.labels, best_fit=True)
        assert any(O.same_order(figure("fig4")) for O in orders)

    def test_size_mismatch(self):
        with pytest.raises(BadParams):
            infer_orders({"o": total_min(chain(3))}, [Claim("ptnorm", ("o",))], ["0", "1"])
