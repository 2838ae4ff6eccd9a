"""Machine verification of the theorems as predicates over finite bundles.

Each theorem id maps to a function that inspects one bundle and returns a
:class:`TheoremVerdict`.  Hypotheses are checked first; a bundle that does
not satisfy them yields ``not-applicable``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .checkers import (
    Claim,
    StructureBundle,
    check_class,
    check_corl,
    check_fuzzy_implication,
    check_partial_fuzzy_implication,
    check_partial_tnorm,
    check_pcrl,
    check_prl,
    check_residuated_lattice,
    check_sprl,
    check_wprl,
    check_zl_prl,
)
from .derivations import derive_pri, dualize_to_pcrl, ea_difference, lea_prl, lea_tnorm
from .enumeration import EnumerationTask, enumerate_class
from .errors import NotACongruence, NotTotal, QuotientOrderNotLattice, UnknownTheoremId
from .filters import (
    Partition,
    build_quotient,
    enumerate_filters,
    enumerate_strong_filters,
    is_congruence,
    mp_closed,
    mp_implies_currying,
    sim_relation,
)
from .lattice import FiniteBoundedLattice
from .partial import PartialBinaryOp, Witness, is_total

VERIFIED, COUNTEREXAMPLE, NOT_APPLICABLE = "verified", "counterexample", "not-applicable"


@dataclass
class TheoremVerdict:
    theorem: str
    scope: str
    status: str
    witnesses: list[Witness] = field(default_factory=list)
    note: str = ""


class _Collector:
    """Accumulates witnesses for one theorem on one bundle."""

    def __init__(self, L: FiniteBoundedLattice, limit: int = 5):
        self.L, self.limit, self.found, self.count = L, limit, [], 0

    def fail(self, tag: str, *elems: int):
        self.count += 1
        if len(self.found) < self.limit:
            self.found.append(Witness(tag, tuple(self.L.labels[e] for e in elems)))

    def verdict(self, thm: str, scope: str, note: str = "") -> TheoremVerdict:
        status = COUNTEREXAMPLE if self.count else VERIFIED
        if self.count:
            note = (note + "; " if note else "") + f"{self.count} failing instance(s)"
        return TheoremVerdict(thm, scope, status, self.found, note)


def _na(thm: str, scope: str, note: str) -> TheoremVerdict:
    return TheoremVerdict(thm, scope, NOT_APPLICABLE, note=note)


def _claims(B: StructureBundle, *tags: str) -> list[Claim]:
    return [c for c in B.claims if c.tag in tags]


def _passing(B: StructureBundle, *tags: str) -> list[Claim]:
    return [c for c in _claims(B, *tags) if check_class(B, c).passed]


def _pairs(B: StructureBundle, *tags: str) -> list[tuple[PartialBinaryOp, PartialBinaryOp]]:
    return [(B.ops[c.operands[0]], B.ops[c.operands[1]]) for c in _passing(B, *tags)]


# --- effect algebras and quasiresiduated lattices ---------------------------

def thm_2_2(B: StructureBundle) -> TheoremVerdict:
    cl = _passing(B, "lea")
    if not cl:
        return _na("Thm2.2", B.name, "no passing LEA claim")
    L, le = B.lattice, B.lattice.leq
    col = _Collector(L)
    for c in cl:
        plus, comp = B.ops[c.operands[0]], B.unaries[c.operands[1]]
        p = plus.cells
        for x, y in product(range(L.n), repeat=2):
            if (p[x][y] is not None) != le[x][comp(y)]:
                col.fail("1", x, y)
        for x, y, z in product(range(L.n), repeat=3):
            if le[x][y] and p[y][z] is not None:
                if p[x][z] is None or not le[p[x][z]][p[y][z]]:
                    col.fail("2", x, y, z)
        # item (3) read with the difference y - x in place of the second summand
        for x, y in product(range(L.n), repeat=2):
            if le[x][y]:
                d = ea_difference(plus, y, x)
                if d is None or p[x][d] != y:
                    col.fail("3", x, y)
    return col.verdict("Thm2.2", B.name)


def thm_2_4(B: StructureBundle) -> TheoremVerdict:
    cl = _passing(B, "quasires")
    if not cl:
        return _na("Thm2.4", B.name, "no passing quasiresiduated claim")
    L, le = B.lattice, B.lattice.leq
    col = _Collector(L)
    for c in cl:
        o, a, comp = B.ops[c.operands[0]].cells, B.ops[c.operands[1]].cells, B.unaries[c.operands[2]]
        for x, y in product(range(L.n), repeat=2):
            if not le[comp(x)][y]:
                continue
            xy = o[x][y]
            if xy is None or not le[xy][y]:
                col.fail("1", x, y)
                continue
            if not le[x][a[y][xy]]:
                col.fail("2", x, y)
            for z in range(L.n):
                if le[z][y] and le[xy][z] != le[x][a[y][z]]:
                    col.fail("3", x, y, z)
    return col.verdict("Thm2.4", B.name)


def prop_2_14(B: StructureBundle) -> TheoremVerdict:
    cl = _passing(B, "quasires")
    if not cl:
        return _na("Prop2.14", B.name, "no passing quasiresiduated claim")
    col = _Collector(B.lattice)
    for c in cl:
        rep = check_partial_tnorm(B.lattice, B.ops[c.operands[0]])
        for e in rep.entries:
            if not e.passed:
                col.count += 1
                col.found.extend(e.witnesses)
    return col.verdict("Prop2.14", B.name)


def prop_2_13(B: StructureBundle) -> TheoremVerdict:
    if not _passing(B, "lea"):
        return _na("Prop2.13", B.name, "no passing LEA claim")
    col = _Collector(B.lattice)
    rep = check_partial_tnorm(B.lattice, lea_tnorm(B))
    for e in rep.entries:
        if not e.passed:
            col.count += 1
            col.found.extend(e.witnesses)
    return col.verdict("Prop2.13", B.name)


def thm_4_15(B: StructureBundle) -> TheoremVerdict:
    if not _passing(B, "lea"):
        return _na("Thm4.15", B.name, "no passing LEA claim")
    P = lea_prl(B)
    col = _Collector(B.lattice)
    rep = check_prl(B.lattice, P.ops["otimes"], P.ops["arrow"])
    for e in rep.entries:
        if not e.passed:
            col.count += 1
            col.found.extend(e.witnesses)
    return col.verdict("Thm4.15", B.name)


# --- partial residuated implications ------------------------------------------

def _tnorms(B: StructureBundle) -> list[PartialBinaryOp]:
    return [B.ops[c.operands[0]] for c in _passing(B, "ptnorm", "tnorm")]


def thm3_5_predicates(L: FiniteBoundedLattice, op: PartialBinaryOp) -> dict[str, bool]:
    c, le, n = op.cells, L.leq, L.n
    imp = derive_pri(L, op, require_tnorm=False).op.cells

    def dist() -> bool:
        for x in range(n):
            for k in range(1, n + 1):
                for X in combinations(range(n), k):
                    vals = [c[x][xi] for xi in X]
                    if any(v is None for v in vals):
                        continue
                    lhs = c[x][L.join_all(X)]
                    if lhs is None or lhs != L.join_all(vals):
                        return False
        return True

    def residuation() -> bool:
        for x, z, y in product(range(n), repeat=3):
            if c[x][z] is None:
                continue
            r = imp[x][y]
            if le[c[x][z]][y] != (r is not None and le[z][r]):
                return False
        return True

    def modus() -> bool:
        for x, y in product(range(n), repeat=2):
            r = imp[x][y]
            if r is not None and c[x][r] is not None and not le[c[x][r]][y]:
                return False
        return True

    def maximum() -> bool:
        for x, y in product(range(n), repeat=2):
            S = [a for a in range(n) if c[x][a] is not None and le[c[x][a]][y]]
            if S and not any(all(le[s][m] for s in S) for m in S):
                return False
        return True

    return {"i": dist(), "ii": residuation(), "iii": modus(), "iv": maximum()}


def thm_3_5(B: StructureBundle) -> TheoremVerdict:
    ops = _tnorms(B)
    if not ops:
        return _na("Thm3.5", B.name, "no passing partial t-norm claim")
    col = _Collector(B.lattice)
    notes = []
    for op in ops:
        p = thm3_5_predicates(B.lattice, op)
        notes.append("".join(f"{k}={'T' if v else 'F'} " for k, v in p.items()).strip())
        cycle = [("i", "ii"), ("ii", "iii"), ("iii", "iv"), ("iv", "i")]
        for a, b in cycle:
            if p[a] and not p[b]:
                col.count += 1
                col.found.append(Witness(f"{a}=>{b}", ()))
        if p["i"]:
            L, c = B.lattice, op.cells
            nonempty = all(any(c[x][a] is not None and L.leq[c[x][a]][y] for a in range(L.n))
                           for x, y in product(range(L.n), repeat=2))
            if nonempty:
                imp = derive_pri(L, op, require_tnorm=False).op
                try:
                    ok = check_fuzzy_implication(L, imp).passed
                except NotTotal:
                    ok = False
                if not ok:
                    col.count += 1
                    col.found.append(Witness("Cor3.6", ()))
    return col.verdict("Thm3.5", B.name, "; ".join(notes))


def thm_3_7(B: StructureBundle) -> TheoremVerdict:
    ops = _tnorms(B)
    if not ops:
        return _na("Thm3.7", B.name, "no passing partial t-norm claim")
    L = B.lattice
    col = _Collector(L)
    for op in ops:
        imp = derive_pri(L, op).op.cells
        for a, b in product(range(L.n), repeat=2):
            if imp[a][b] is not None and L.leq[a][b] and imp[a][b] != L.top:
                col.fail("forward", a, b)
    return col.verdict("Thm3.7", B.name)


def thm_3_7_converse(B: StructureBundle) -> TheoremVerdict:
    """Cells where the derived implication is top although a is not below b.

    Runs on every claimed partial t-norm table whether or not the claim holds,
    since the point is to exhibit the failure of the converse.
    """
    claims = _claims(B, "ptnorm", "tnorm")
    if not claims:
        return _na("Thm3.7-converse", B.name, "no partial t-norm claim")
    L = B.lattice
    col = _Collector(L)
    for c in claims:
        imp = derive_pri(L, B.ops[c.operands[0]], require_tnorm=False).op.cells
        for a, b in product(range(L.n), repeat=2):
            if imp[a][b] == L.top and not L.leq[a][b]:
                col.fail("converse", a, b)
    v = col.verdict("Thm3.7-converse", B.name)
    # witnesses here refute the converse, which is the expected outcome
    v.status = "witnessed" if col.count else "no-witness"
    return v


def thm_4_8(B: StructureBundle) -> TheoremVerdict:
    ops = _tnorms(B)
    if not ops:
        return _na("Thm4.8", B.name, "no passing partial t-norm claim")
    col = _Collector(B.lattice)
    for op in ops:
        rep = check_partial_fuzzy_implication(B.lattice, derive_pri(B.lattice, op).op)
        for e in rep.entries:
            if not e.passed:
                col.count += 1
                col.found.extend(e.witnesses)
    return col.verdict("Thm4.8", B.name)


def thm_4_14(B: StructureBundle) -> TheoremVerdict:
    claims = _claims(B, "ptnorm", "tnorm")
    if not claims:
        return _na("Thm4.14", B.name, "no partial t-norm claim")
    col = _Collector(B.lattice)
    notes = []
    for c in claims:
        op = B.ops[c.operands[0]]
        if not check_partial_tnorm(B.lattice, op).passed:
            notes.append(f"{c.operands[0]} is not a partial t-norm; derived pair checked anyway")
        rep = check_prl(B.lattice, op, derive_pri(B.lattice, op, require_tnorm=False).op)
        for e in rep.entries:
            if not e.passed:
                col.count += 1
                col.found.extend(e.witnesses)
    return col.verdict("Thm4.14", B.name, "; ".join(notes))


# --- partial residuated lattices ---------------------------------------------

def thm_4_13(B: StructureBundle) -> TheoremVerdict:
    pairs = [p for p in _pairs(B, "prl", "wprl", "pap", "sprl", "rl") if check_prl(B.lattice, *p).passed]
    if not pairs:
        return _na("Thm4.13", B.name, "no pair passing check_prl")
    L, le, t = B.lattice, B.lattice.leq, B.lattice.top
    col = _Collector(L)
    for _, arrow in pairs:
        a = arrow.cells
        for x in range(L.n):
            if a[x][x] is not None and a[x][x] != t:
                col.fail("1", x)
            if a[x][t] is not None and a[x][t] != t:
                col.fail("2", x)
            if a[t][x] is not None and a[t][x] != x:
                col.fail("3", x)
            for y in range(L.n):
                if a[x][y] is not None and (a[x][y] == t) != le[x][y]:
                    col.fail("4", x, y)
    return col.verdict("Thm4.13", B.name)


def thm_4_18(B: StructureBundle) -> TheoremVerdict:
    L = B.lattice
    pairs = [(B.ops[c.operands[0]], B.ops[c.operands[1]]) for c in _claims(B, "prl", "wprl", "sprl", "rl", "pap")]
    pairs = [p for p in pairs if check_sprl(L, *p).passed]
    if not pairs:
        return _na("Thm4.18", B.name, "no pair passing check_sprl")
    col = _Collector(L)
    for o, a in pairs:
        if not (is_total(o) and is_total(a)):
            col.fail("total")
        rep = check_residuated_lattice(L, o, a)
        for e in rep.entries:
            if not e.passed:
                col.count += 1
                col.found.extend(e.witnesses)
    return col.verdict("Thm4.18", B.name)


def _wprl_pairs(B: StructureBundle):
    L = B.lattice
    pairs = [(B.ops[c.operands[0]], B.ops[c.operands[1]]) for c in _claims(B, "prl", "wprl", "sprl", "rl")]
    return [p for p in pairs if check_wprl(L, *p).passed]


def thm_4_24(B: StructureBundle) -> TheoremVerdict:
    pairs = _wprl_pairs(B)
    if not pairs:
        return _na("Thm4.24", B.name, "no pair passing check_wprl")
    L, le = B.lattice, B.lattice.leq
    col = _Collector(L)
    for o, a in pairs:
        c, r = o.cells, a.cells
        for x, y in product(range(L.n), repeat=2):
            if c[x][y] is not None and not le[c[x][y]][L.meet[x][y]]:
                col.fail("1", x, y)
            v = r[x][y]
            if v is None:
                continue
            if c[x][v] is not None and not le[c[x][v]][y]:
                col.fail("2", x, y)
            w = r[v][y]
            if w is not None and not le[x][w]:
                col.fail("3", x, y)
    return col.verdict("Thm4.24", B.name)


# --- co-residuated structures -------------------------------------------------

def thm_5_17(B: StructureBundle) -> TheoremVerdict:
    pairs = _pairs(B, "pcrl")
    if not pairs:
        return _na("Thm5.17", B.name, "no pair passing check_pcrl")
    L, le, bot = B.lattice, B.lattice.leq, B.lattice.bottom
    col = _Collector(L)
    for o, s in pairs:
        c, r = o.cells, s.cells
        for x in range(L.n):
            if r[x][bot] is not None and r[x][bot] != x:
                col.fail("1", x)
            for y in range(L.n):
                if r[x][y] is not None and (r[x][y] == bot) != le[x][y]:
                    col.fail("2", x, y)
                xy = c[x][y]
                if xy is not None and r[xy][y] is not None and not le[r[xy][y]][x]:
                    col.fail("3", x, y)
                v = r[x][y]
                if v is not None and c[v][y] is not None and not le[x][c[v][y]]:
                    col.fail("4", x, y)
    return col.verdict("Thm5.17", B.name)


def _zl_pairs(B: StructureBundle):
    return [(B.ops[c.operands[0]], B.ops[c.operands[1]]) for c in _claims(B, "zlprl")
            if check_zl_prl(B.lattice, B.ops[c.operands[0]], B.ops[c.operands[1]]).passed]


def thm_5_19(B: StructureBundle) -> TheoremVerdict:
    pairs = _zl_pairs(B)
    if not pairs:
        return _na("Thm5.19", B.name, "no pair passing check_zl_prl")
    col = _Collector(B.lattice)
    for o, m in pairs:
        zl = StructureBundle(B.name, B.lattice, {"oplus": o, "ominus": m}, claims=[Claim("zlprl", ("oplus", "ominus"))])
        D = dualize_to_pcrl(zl)
        rep = check_pcrl(D.lattice, D.ops["odot"], D.ops["leadsto"])
        for e in rep.entries:
            if not e.passed:
                col.count += 1
                col.found.extend(e.witnesses)
    return col.verdict("Thm5.19", B.name)


def cor_5_20(B: StructureBundle) -> TheoremVerdict:
    pairs = _pairs(B, "pcrl")
    if not pairs:
        return _na("Cor5.20", B.name, "no pair passing check_pcrl")
    col = _Collector(B.lattice)
    for o, s in pairs:
        try:
            rep = check_corl(B.lattice, o, s)
        except NotTotal:
            col.fail("total")
            continue
        for e in rep.entries:
            if not e.passed:
                col.count += 1
                col.found.extend(e.witnesses)
    return col.verdict("Cor5.20", B.name)


# --- filters -------------------------------------------------------------------

def _filter_scope(B: StructureBundle, strong: bool):
    pairs = _wprl_pairs(B)
    out = []
    for o, a in pairs:
        pair = (B.lattice, o, a)
        fs = enumerate_strong_filters(B, pair) if strong else enumerate_filters(B, pair)
        out += [(pair, f) for f in fs]
    return pairs, out


def prop_6_8(B: StructureBundle) -> TheoremVerdict:
    pairs, scope = _filter_scope(B, strong=False)
    if not pairs:
        return _na("Prop6.8", B.name, "no pair passing check_wprl")
    col = _Collector(B.lattice)
    for pair, f in scope:
        v = mp_closed(B, f.members, pair)
        if not v:
            col.count += 1
            col.found.extend(v.entries[0].witnesses)
    return col.verdict("Prop6.8", B.name, f"{len(scope)} filter(s)")


def _strong_theorem(thm: str, B: StructureBundle, body: Callable) -> TheoremVerdict:
    pairs, scope = _filter_scope(B, strong=True)
    if not pairs:
        return _na(thm, B.name, "no pair passing check_wprl")
    if not scope:
        return _na(thm, B.name, "no strong filter")
    col = _Collector(B.lattice)
    for pair, f in scope:
        body(col, pair, f)
    return col.verdict(thm, B.name, f"{len(scope)} strong filter(s)")


def prop_6_15(B: StructureBundle) -> TheoremVerdict:
    def body(col, pair, f):
        v = mp_implies_currying(B, f.members, pair)
        if not v:
            col.count += 1
            col.found.extend(v.entries[0].witnesses)
    return _strong_theorem("Prop6.15", B, body)


def thm_6_17(B: StructureBundle) -> TheoremVerdict:
    def body(col, pair, f):
        P = sim_relation(B, f.members, pair)
        if not isinstance(P, Partition):
            col.count += 1
            for e in P.entries:
                col.found.extend(e.witnesses)
    return _strong_theorem("Thm6.17", B, body)


def thm_6_19(B: StructureBundle) -> TheoremVerdict:
    def body(col, pair, f):
        P = sim_relation(B, f.members, pair)
        if not isinstance(P, Partition):
            col.count += 1
            for e in P.entries:
                col.found.extend(e.witnesses)
            return
        v = is_congruence(B, P, pair)
        if not v:
            col.count += 1
            for e in v.entries:
                col.found.extend(e.witnesses)
    return _strong_theorem("Thm6.19", B, body)


def thm_6_21(B: StructureBundle) -> TheoremVerdict:
    def body(col, pair, f):
        try:
            Q = build_quotient(B, f.members, pair)
        except (NotACongruence, QuotientOrderNotLattice):
            col.count += 1
            col.found.append(Witness("quotient", tuple(B.lattice.labels[i] for i in f.members)))
            return
        rep = check_prl(Q.lattice, Q.otimes, Q.arrow)
        for e in rep.entries:
            if not e.passed:
                col.count += 1
                col.found.extend(e.witnesses)
    return _strong_theorem("Thm6.21", B, body)


THEOREMS: dict[str, Callable[[StructureBundle], TheoremVerdict]] = {
    "Thm2.2": thm_2_2,
    "Thm2.4": thm_2_4,
    "Prop2.13": prop_2_13,
    "Prop2.14": prop_2_14,
    "Thm3.5": thm_3_5,
    "Thm3.7": thm_3_7,
    "Thm3.7-converse": thm_3_7_converse,
    "Thm4.8": thm_4_8,
    "Thm4.13": thm_4_13,
    "Thm4.14": thm_4_14,
    "Thm4.15": thm_4_15,
    "Thm4.18": thm_4_18,
    "Thm4.24": thm_4_24,
    "Thm5.17": thm_5_17,
    "Thm5.19": thm_5_19,
    "Cor5.20": cor_5_20,
    "Prop6.8": prop_6_8,
    "Prop6.15": prop_6_15,
    "Thm6.17": thm_6_17,
    "Thm6.19": thm_6_19,
    "Thm6.21": thm_6_21,
}


def resolve_ids(ids: Iterable[str] | str) -> list[str]:
    if isinstance(ids, str):
        ids = THEOREMS if ids == "all" else [s.strip() for s in ids.split(",") if s.strip()]
    out = []
    for i in ids:
        if i not in THEOREMS:
            raise UnknownTheoremId(f"unknown theorem id {i!r}; known: {', '.join(THEOREMS)}")
        out.append(i)
    return out


def verify_theorems(scope: Sequence[StructureBundle] | EnumerationTask, ids: Iterable[str] | str = "all") -> list[TheoremVerdict]:
    """Run each theorem on each bundle; an enumeration task is expanded first."""
    names = resolve_ids(ids)
    if isinstance(scope, EnumerationTask):
        scope = enumerate_class(scope).bundles
    return [THEOREMS[i](B) for i in names for B in scope]


def summarize(verdicts: Sequence[TheoremVerdict]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for v in verdicts:
        out.setdefault(v.theorem, {}).setdefault(v.status, 0)
        out[v.theorem][v.status] += 1
    return out
