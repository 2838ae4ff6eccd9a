"""Acceptance gate.  Each test prints one ``criterion N: PASS|FAIL`` line, then asserts."""
from __future__ import annotations

import os
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from plw.checkers import check_claims, check_partial_tconorm, check_partial_tnorm, check_prl, check_residuated_lattice
from plw.derivations import derive_pri, lea_prl, lea_tnorm
from plw.enumeration import EnumerationTask, enumerate_class
from plw.families import LEA_BUILDERS, builtin, golden_table, registry
from plw.filters import build_quotient, enumerate_filters, enumerate_strong_filters, is_filter, is_strong_filter
from plw.lattice import chain
from plw.partial import is_total
from plw.report import table_doc
from plw.theorems import verify_theorems

FROZEN_PTNORM_COUNTS = {2: 2, 3: 8, 4: 50}
DENOMINATORS = (2, 4, 8)


@pytest.fixture
def verdict(capsys):
    def emit(number: int, problems: list[str], note: str = "") -> None:
        status = "PASS" if not problems else "FAIL"
        detail = "".join(f" - {t}" for t in ("; ".join(problems), note) if t)
        with capsys.disabled():
            print(f"\ncriterion {number}: {status}{detail}")
        assert not problems, problems
    return emit


def proper(B, filters):
    return [f.labels(B.lattice) for f in filters if f.proper]


def test_criterion_1_golden_tables(verdict):
    problems = []
    start = time.perf_counter()
    for B in registry(denominators=DENOMINATORS):
        for claim, rep in zip(B.claims, check_claims(B)):
            if not rep.passed:
                problems.append(f"{B.name} {claim.tag} fails {','.join(rep.failed())}")
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        problems.append(f"took {elapsed:.1f}s")
    verdict(1, problems)


def test_criterion_2_derived_implication(verdict):
    B = builtin("ex3.4")
    out = derive_pri(B.lattice, B.ops["odot"], require_tnorm=False)
    problems = []
    if out.op != golden_table(4):
        problems.append("derived table differs from the golden implication table")
    if out.diagnostics.get((1, 2)) != "sup-not-attained":
        problems.append("cell (1,2) not flagged")
    elif out.op.cells[1][2] != B.lattice.index("4"):
        problems.append("cell (1,2) is not 4")
    verdict(2, problems)


def test_criterion_3_filter_lists(verdict):
    expected = {
        "ex4.20": [["3"], ["1", "3"], ["2", "3"]],
        "ex4.21": [["4"], ["2", "4"], ["3", "4"], ["1", "2", "4"]],
        "ex4.22": [["5"], ["1", "5"], ["2", "5"], ["4", "5"], ["1", "2", "5"], ["1", "4", "5"], ["2", "4", "5"]],
    }
    problems = []
    for name, want in expected.items():
        B = builtin(name)
        got = proper(B, enumerate_filters(B))
        if sorted(got) != sorted(want):
            problems.append(f"{name}: got {got}")
    verdict(3, problems)


def test_criterion_4_strong_filters(verdict):
    seven = [["5"], ["1", "5"], ["2", "5"], ["4", "5"], ["1", "2", "5"], ["1", "4", "5"], ["2", "4", "5"]]
    expected = {"ex4.20": [], "ex4.21": [["4"], ["3", "4"]], "ex4.22": seven, "ex4.23": [["5"], ["2", "5"]]}
    problems = []
    for name, want in expected.items():
        B = builtin(name)
        got = proper(B, enumerate_strong_filters(B))
        if sorted(got) != sorted(want):
            problems.append(f"{name}: got {got}")
    failed = is_strong_filter(builtin("ex4.21"), ["2", "4"]).failed()
    if failed != ["s2", "s4"]:
        problems.append(f"{{2,4}} fails {failed}")
    verdict(4, problems)


def test_criterion_5_quotient(verdict):
    B = builtin("ex6.10")
    Q = build_quotient(B, ["2", "3"])
    problems = []
    if Q.partition.labels(B.lattice) != [["0", "1"], ["2", "3"]]:
        problems.append(f"partition {Q.partition.labels(B.lattice)}")
    if Q.otimes != golden_table(25):
        problems.append(f"otimes {table_doc(Q.lattice, Q.otimes)}")
    if Q.arrow != golden_table(26):
        problems.append(f"arrow {table_doc(Q.lattice, Q.arrow)}")
    rep = check_prl(Q.lattice, Q.otimes, Q.arrow)
    if not rep.passed:
        problems.append(f"quotient fails {rep.failed()}")
    verdict(5, problems)


def test_criterion_6_lea_bridge(verdict):
    problems = []
    for name, make in LEA_BUILDERS.items():
        E = make()
        if E.lattice.n > 6:
            continue
        rep = check_partial_tnorm(E.lattice, lea_tnorm(E))
        if not rep.passed:
            problems.append(f"{name} tnorm fails {rep.failed()}")
        P = lea_prl(E)
        rep = check_prl(P.lattice, P.ops["otimes"], P.ops["arrow"])
        if not rep.passed:
            problems.append(f"{name} prl fails {rep.failed()}")
    verdict(6, problems)


LISTED = ["Thm2.2", "Thm2.4", "Prop2.14", "Thm3.7", "Thm4.8", "Thm4.13", "Thm4.24", "Thm5.17", "Thm5.19",
          "Cor5.20", "Prop6.8", "Prop6.15", "Thm6.17", "Thm6.19", "Thm6.21"]


def test_criterion_7_theorem_suite(verdict):
    verdicts = verify_theorems(registry(denominators=DENOMINATORS), LISTED)
    problems = []
    for thm in LISTED:
        bad = sorted({v.scope for v in verdicts if v.theorem == thm and v.status == "counterexample"})
        if bad:
            problems.append(f"{thm} counterexample on {','.join(bad)}")
    (conv,) = verify_theorems([builtin("ex3.4")], ["Thm3.7-converse"])
    if conv.status != "witnessed" or not conv.witnesses:
        problems.append("converse not witnessed on ex3.4")
    vacuous = [t for t in LISTED if all(v.status == "not-applicable" for v in verdicts if v.theorem == t)]
    verdict(7, problems, f"never applicable: {','.join(vacuous)}" if vacuous else "")


def test_criterion_8_enumeration(verdict):
    problems = []
    start = time.perf_counter()
    for n, want in FROZEN_PTNORM_COUNTS.items():
        got = enumerate_class(EnumerationTask(chain(n), "ptnorm")).count
        if got != want:
            problems.append(f"size {n}: {got} != {want}")
    elapsed = time.perf_counter() - start
    for n in (2, 3, 4):
        for B in enumerate_class(EnumerationTask(chain(n), "sprl")).bundles:
            o, a = B.ops["otimes"], B.ops["arrow"]
            if not (is_total(o) and is_total(a) and check_residuated_lattice(B.lattice, o, a).passed):
                problems.append(f"sPRL on chain {n} not a residuated lattice")
    if elapsed >= 60:
        problems.append(f"took {elapsed:.1f}s")
    verdict(8, problems)


def test_criterion_9_grid_families(verdict):
    problems = []
    for d in DENOMINATORS:
        for key, check in [*((k, check_partial_tnorm) for k in ("ex2.6", "ex2.7", "ex2.8", "ex2.9", "ex2.10")),
                           *((k, check_partial_tconorm) for k in ("ex5.5", "ex5.6", "ex5.7", "ex5.8", "ex5.9"))]:
            B = builtin(f"grid:{key}", {"denominator": d})
            rep = check(B.lattice, B.ops["odot"])
            if not rep.passed:
                problems.append(f"{key} d={d} fails {rep.failed()}")
        B = builtin("grid:ex6.5", {"denominator": d})
        n = B.lattice.n
        if not all(is_filter(B, range(k, n)) for k in range(n)):
            problems.append(f"ex6.5 d={d} up-set not a filter")
    B = builtin("grid:ex6.6", {"denominator": 10})
    L = B.lattice
    v = B.ops["arrow"].cells[L.index("3/10")][L.index("1/10")]
    if v is None or Fraction(L.labels[v]) != Fraction(7, 10):
        problems.append("0.3 -> 0.1 != 0.7")
    verdict(9, problems)


REPORT_COMMANDS = [
    ["verify", "--all"],
    ["check", "ex4.22"],
    ["derive-imp", "ex3.4", "--unchecked"],
    ["filters", "ex4.22", "--strong", "--mp"],
    ["quotient", "ex6.10", "--filter", "2,3"],
    ["bridge", "lea:diamond"],
    ["enumerate", "--size", "4", "--class", "ptnorm"],
    ["infer-order", "ex4.20"],
]


def _report_run(seed: str) -> bytes:
    env = {**os.environ, "PYTHONHASHSEED": seed}
    out = b""
    for argv in REPORT_COMMANDS:
        r = subprocess.run([sys.executable, "-m", "plw.cli", *argv], capture_output=True, env=env, check=False)
        out += r.stdout + f"exit {r.returncode}\n".encode()
    return out


def test_criterion_10_determinism(verdict):
    first, second = _report_run("1"), _report_run("2")
    verdict(10, [] if first == second else ["report bytes differ between runs"])
