"""Machine-readable reports (stable JSON) and Graphviz export."""

from __future__ import annotations

import json
from typing import Any, Sequence

from .checkers import CheckReport, StructureBundle
from .derivations import DerivationOutcome
from .enumeration import EnumerationResult
from .filters import FilterSet, QuotientStructure, Verdict
from .lattice import FiniteBoundedLattice
from .partial import AxiomResult, PartialBinaryOp
from .theorems import TheoremVerdict, summarize

PASS, FAIL = "pass", "fail"


def dumps(doc: Any) -> str:
    """Canonical encoding: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def table_doc(L: FiniteBoundedLattice, op: PartialBinaryOp) -> list[list[str]]:
    return [["-" if v is None else L.labels[v] for v in row] for row in op.cells]


def lattice_doc(L: FiniteBoundedLattice) -> dict:
    return {
        "elements": list(L.labels),
        "covers": [[a, b] for a, b in L.order_pairs()],
        "bottom": L.labels[L.bottom],
        "top": L.labels[L.top],
    }


def axiom_doc(e: AxiomResult) -> dict:
    doc = {
        "axiom": e.axiom,
        "verdict": PASS if e.passed else FAIL,
        "witnesses": [list(w.elements) for w in e.witnesses],
    }
    if e.note:
        doc["note"] = e.note
    return doc


def check_doc(rep: CheckReport) -> dict:
    return {
        "kind": "check",
        "class": rep.cls,
        "subject": rep.subject,
        "overall": PASS if rep.passed else FAIL,
        "axioms": [axiom_doc(e) for e in rep.entries],
    }


def theorems_doc(verdicts: Sequence[TheoremVerdict]) -> dict:
    return {
        "kind": "theorems",
        "overall": FAIL if any(v.status == "counterexample" for v in verdicts) else PASS,
        "summary": summarize(verdicts),
        "verdicts": [
            {
                "theorem": v.theorem,
                "scope": v.scope,
                "status": v.status,
                "witnesses": [[w.tag, *w.elements] for w in v.witnesses],
                "note": v.note,
            }
            for v in verdicts
        ],
    }


def filters_doc(B: StructureBundle, filters: Sequence[FilterSet], strong: dict[tuple[int, ...], Verdict] | None = None,
                mp: dict[tuple[int, ...], Verdict] | None = None) -> dict:
    L = B.lattice
    rows = []
    for f in filters:
        row: dict[str, Any] = {"members": f.labels(L), "proper": f.proper}
        if strong is not None:
            v = strong[f.members]
            row["strong"] = v.ok
            row["conditions"] = [axiom_doc(e) for e in v.entries]
        if mp is not None:
            row["mp_closed"] = mp[f.members].ok
        rows.append(row)
    doc = {"kind": "filters", "subject": B.name, "filters": rows}
    if strong is not None:
        doc["strong"] = [f.labels(L) for f in filters if strong[f.members].ok and f.proper]
    return doc


def enumeration_doc(L: FiniteBoundedLattice, cls: str, res: EnumerationResult, with_tables: bool = True) -> dict:
    doc = {
        "kind": "enumeration",
        "class": cls,
        "lattice": lattice_doc(L),
        "count": res.count,
        "capped": res.capped,
        "leaves": res.tables_searched,
    }
    if with_tables:
        doc["results"] = [{name: table_doc(L, op) for name, op in B.ops.items()} for B in res.bundles]
    return doc


def derivation_doc(B: StructureBundle, source: str, out: DerivationOutcome, kind: str) -> dict:
    L = B.lattice
    return {
        "kind": kind,
        "subject": B.name,
        "source": source,
        "elements": list(L.labels),
        "table": table_doc(L, out.op),
        "diagnostics": [
            {"cell": [L.labels[a], L.labels[b]], "note": note} for (a, b), note in sorted(out.diagnostics.items())
        ],
    }


def quotient_doc(B: StructureBundle, Q: QuotientStructure, rep: CheckReport) -> dict:
    L = B.lattice
    return {
        "kind": "quotient",
        "subject": B.name,
        "filter": [L.labels[i] for i in Q.filter],
        "partition": Q.partition.labels(L),
        "lattice": lattice_doc(Q.lattice),
        "otimes": table_doc(Q.lattice, Q.otimes),
        "arrow": table_doc(Q.lattice, Q.arrow),
        "arrow_order_mismatches": [[Q.lattice.labels[i], Q.lattice.labels[j]] for i, j in Q.arrow_order_mismatches],
        "check": check_doc(rep),
    }


def emit_report(obj: Any) -> str:
    """Serialize a :class:`CheckReport`, a list of reports or theorem verdicts, or a prepared document."""
    if isinstance(obj, CheckReport):
        return dumps(check_doc(obj))
    if isinstance(obj, (list, tuple)) and obj and all(isinstance(v, TheoremVerdict) for v in obj):
        return dumps(theorems_doc(obj))
    if isinstance(obj, (list, tuple)) and all(isinstance(r, CheckReport) for r in obj):
        docs = [check_doc(r) for r in obj]
        overall = PASS if all(d["overall"] == PASS for d in docs) else FAIL
        return dumps({"kind": "checks", "overall": overall, "reports": docs})
    if isinstance(obj, dict):
        return dumps(obj)
    raise TypeError(f"cannot emit a report for {type(obj).__name__}")


def export_dot(L: FiniteBoundedLattice, name: str = "L") -> str:
    """Hasse diagram as a DOT digraph; edges point upward from covered to covering element."""
    def q(s: str) -> str:
        return '"' + s.replace('"', '\\"') + '"'

    lines = [f"digraph {q(name)} {{", "  rankdir=BT;", "  node [shape=circle];",
             f"  {{ rank=source; {q(L.labels[L.bottom])}; }}"]
    lines += [f"  {q(L.labels[x])};" for x in range(L.n)]
    lines += [f"  {q(L.labels[a])} -> {q(L.labels[b])};" for a, b in L.covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_edges(text: str) -> set[tuple[str, str]]:
    """Edge set of a DOT document written by :func:`export_dot`."""
    out = set()
    for line in text.splitlines():
        if "->" in line:
            a, b = line.strip().rstrip(";").split("->")
            out.add((a.strip().strip('"'), b.strip().strip('"')))
    return out
