"""One checker per structure class.

Each ``check_*`` function returns a :class:`CheckReport` with one entry per
axiom.  Axioms with a definedness guard ("if x*y is defined ...") are scanned
only where the guard holds; axioms without one require definedness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ArrowNotTotal, BoundaryUndefined, MissingBound, NotAPoset, NotTotal, UnknownClass
from .lattice import FiniteBoundedLattice, lattice_from_leq
from .partial import (
    Axiom,
    AxiomResult,
    PartialBinaryOp,
    UnaryOpTable,
    Witness,
    assoc_directional_axiom,
    assoc_symmetric_axiom,
    both,
    commutative_axiom,
    is_total,
    left_monotone_axiom,
    monotone_axiom,
    right_monotone_axiom,
    scan,
    total_axiom,
)

CLASS_TAGS = (
    "ptnorm", "ptconorm", "tnorm", "tconorm", "negation", "fi", "pfi", "ea", "lea",
    "quasires", "pap", "prl", "sprl", "wprl", "coap", "corl", "pcrl", "zlprl", "rl",
)

# operand kinds per class tag: "b" binary op, "u" unary op
CLASS_SIGNATURES = {
    "ptnorm": "b", "ptconorm": "b", "tnorm": "b", "tconorm": "b", "negation": "u",
    "fi": "b", "pfi": "b", "ea": "bu", "lea": "bu", "quasires": "bbu", "pap": "bb",
    "prl": "bb", "sprl": "bb", "wprl": "bb", "coap": "bb", "corl": "bb", "pcrl": "bb",
    "zlprl": "bb", "rl": "bb",
}


@dataclass(frozen=True)
class Claim:
    tag: str
    operands: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.tag}({', '.join(self.operands)})"


@dataclass
class StructureBundle:
    name: str
    lattice: FiniteBoundedLattice
    ops: dict[str, PartialBinaryOp] = field(default_factory=dict)
    unaries: dict[str, UnaryOpTable] = field(default_factory=dict)
    claims: list[Claim] = field(default_factory=list)

    def __post_init__(self):
        n = self.lattice.n
        for k, op in self.ops.items():
            if op.n != n:
                raise ValueError(f"op {k} has size {op.n}, lattice has {n}")
        for k, u in self.unaries.items():
            if u.n != n:
                raise ValueError(f"unary {k} has size {u.n}, lattice has {n}")
        for c in self.claims:
            if c.tag not in CLASS_SIGNATURES:
                raise UnknownClass(f"unknown class tag {c.tag!r}")

    def semantic_key(self):
        """Everything that identifies the bundle mathematically (used for equality tests)."""
        return (
            self.lattice.labels,
            self.lattice.leq,
            tuple(sorted((k, v.cells) for k, v in self.ops.items())),
            tuple(sorted((k, v.image) for k, v in self.unaries.items())),
            tuple((c.tag, c.operands) for c in self.claims),
        )


@dataclass
class CheckReport:
    cls: str
    entries: list[AxiomResult]
    subject: str = ""
    axioms: dict[str, Axiom] = field(default_factory=dict, repr=False, compare=False)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self) -> bool:
        return self.passed

    def entry(self, axiom: str) -> AxiomResult:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def failed(self) -> list[str]:
        return [e.axiom for e in self.entries if not e.passed]


def run_axioms(cls: str, L: FiniteBoundedLattice, axioms: Sequence[Axiom], subject: str = "") -> CheckReport:
    return CheckReport(cls, [scan(L, a) for a in axioms], subject, {a.name: a for a in axioms})


def _require_total(op: PartialBinaryOp, what: str, exc=NotTotal):
    if not is_total(op):
        raise exc(f"{what} must be a total operation")


# --- t-norms and t-conorms ---------------------------------------------------

def _unit_axiom(op: PartialBinaryOp, unit: int, name: str, side: str = "right") -> Axiom:
    c = op.cells
    if side == "right":
        return Axiom(name, 1, lambda x: c[x][unit] == x)
    return Axiom(name, 1, lambda x: c[unit][x] == x)


def partial_tnorm_axioms(L: FiniteBoundedLattice, op: PartialBinaryOp) -> list[Axiom]:
    return [
        _unit_axiom(op, L.top, "1"),
        commutative_axiom(op, "2"),
        assoc_directional_axiom(op, "3"),
        monotone_axiom(L, op, "4"),
    ]


def check_partial_tnorm(L: FiniteBoundedLattice, op: PartialBinaryOp) -> CheckReport:
    return run_axioms("ptnorm", L, partial_tnorm_axioms(L, op))


def check_partial_tconorm(L: FiniteBoundedLattice, op: PartialBinaryOp) -> CheckReport:
    return run_axioms("ptconorm", L, [
        _unit_axiom(op, L.bottom, "i", side="left"),
        commutative_axiom(op, "ii"),
        assoc_directional_axiom(op, "iii"),
        monotone_axiom(L, op, "iv"),
    ])


def check_tnorm(L: FiniteBoundedLattice, op: PartialBinaryOp) -> CheckReport:
    return run_axioms("tnorm", L, [total_axiom(op)] + partial_tnorm_axioms(L, op))


def check_tconorm(L: FiniteBoundedLattice, op: PartialBinaryOp) -> CheckReport:
    rep = check_partial_tconorm(L, op)
    tot = total_axiom(op)
    return CheckReport("tconorm", [scan(L, tot)] + rep.entries, axioms={**rep.axioms, tot.name: tot})


# --- effect algebras -----------------------------------------------------------

def effect_algebra_order(plus: PartialBinaryOp) -> list[list[bool]]:
    """x <= y iff x + z = y for some z."""
    n = plus.n
    leq = [[False] * n for _ in range(n)]
    for x in range(n):
        for z in range(n):
            y = plus.cells[x][z]
            if y is not None:
                leq[x][y] = True
    return leq


def check_effect_algebra(
    carrier: FiniteBoundedLattice | Sequence[str],
    plus: PartialBinaryOp,
    comp: UnaryOpTable,
    zero: int | None = None,
    one: int | None = None,
) -> CheckReport:
    """Effect-algebra axioms E1-E4 plus the lattice test on the induced order.

    ``carrier`` is either a lattice (whose bounds give 0 and 1 and whose order
    must coincide with the induced one) or a plain label list, in which case
    ``zero``/``one`` are required.
    """
    given = carrier if isinstance(carrier, FiniteBoundedLattice) else None
    labels = given.labels if given else tuple(map(str, carrier))
    if given is not None:
        zero = given.bottom if zero is None else zero
        one = given.top if one is None else one
    if zero is None or one is None:
        raise ValueError("zero and one are required when the carrier is not a lattice")
    # index-only shell so scans can render witnesses before any order is known
    shell = given or _label_shell(labels)
    c = plus.cells
    n = plus.n
    axioms = [
        both("E1", Axiom("", 2, lambda x, y: (c[x][y] is None) == (c[y][x] is None)),
             commutative_axiom(plus, "")),
        assoc_symmetric_axiom(plus, "E2"),
        Axiom("E3", 1, lambda x: [y for y in range(n) if c[x][y] == one] == [comp.image[x]]),
        Axiom("E4", 1, lambda x: c[x][one] is None or x == zero),
    ]
    rep = run_axioms("ea", shell, axioms)
    leq = effect_algebra_order(plus)
    derived = None
    try:
        derived = lattice_from_leq(labels, leq)
        rep.entries.append(AxiomResult("LEA", True))
    except (NotAPoset, MissingBound) as exc:
        rep.entries.append(AxiomResult("LEA", False, [Witness("LEA", ())], note=str(exc)))
    if given is not None:
        same = derived is not None and derived.leq == given.leq
        rep.entries.append(AxiomResult("order", same, [] if same else [Witness("order", ())],
                                       note="" if same else "induced order differs from the lattice order"))
    rep.extra["derived_order"] = derived
    return rep


def _label_shell(labels: Sequence[str]) -> FiniteBoundedLattice:
    n = len(labels)
    rel = tuple(tuple(i == j for j in range(n)) for i in range(n))
    zeros = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    return FiniteBoundedLattice(tuple(labels), rel, zeros, zeros, 0, 0)


def check_lea(L: FiniteBoundedLattice, plus: PartialBinaryOp, comp: UnaryOpTable) -> CheckReport:
    rep = check_effect_algebra(L, plus, comp)
    rep.cls = "lea"
    return rep


def check_ea(L: FiniteBoundedLattice, plus: PartialBinaryOp, comp: UnaryOpTable) -> CheckReport:
    rep = check_effect_algebra(L, plus, comp)
    rep.entries = [e for e in rep.entries if e.axiom.startswith("E")]
    return rep


# --- quasiresiduated lattices ----------------------------------------------------

def check_quasiresiduated(L: FiniteBoundedLattice, odot: PartialBinaryOp, arrow: PartialBinaryOp,
                          comp: UnaryOpTable) -> CheckReport:
    _require_total(arrow, "arrow", ArrowNotTotal)
    c, a, le, nt = odot.cells, arrow.cells, L.leq, comp.image

    def iii(x, y, z):
        u = L.join[x][nt[y]]
        lhs = c[u][y]
        if lhs is None:
            return False
        return le[lhs][L.meet[y][z]] == le[u][a[y][z]]

    return run_axioms("quasires", L, [
        Axiom("i-unit", 1, lambda x: c[x][L.top] == x and c[L.top][x] == x),
        commutative_axiom(odot, "i-comm"),
        assoc_symmetric_axiom(odot, "i-assoc"),
        Axiom("i-domain", 2, lambda x, y: (c[x][y] is not None) == le[nt[x]][y]),
        Axiom("ii-involution", 1, lambda x: nt[nt[x]] == x),
        Axiom("ii-antitone", 2, lambda x, y: not le[x][y] or le[nt[y]][nt[x]]),
        Axiom("iii", 3, iii),
    ])


# --- negations and implications -----------------------------------------------------

def check_negation(L: FiniteBoundedLattice, N: UnaryOpTable) -> CheckReport:
    m, le = N.image, L.leq
    return run_axioms("negation", L, [
        Axiom("i", 0, lambda: m[L.bottom] == L.top and m[L.top] == L.bottom),
        Axiom("ii", 2, lambda x, y: not le[x][y] or le[m[y]][m[x]]),
    ])


def _boundary_axiom(op: PartialBinaryOp, L: FiniteBoundedLattice, name: str) -> Axiom:
    c, b, t = op.cells, L.bottom, L.top
    return Axiom(name, 0, lambda: c[b][b] == t and c[t][t] == t and c[t][b] == b)


def check_fuzzy_implication(L: FiniteBoundedLattice, I: PartialBinaryOp) -> CheckReport:
    _require_total(I, "fuzzy implication")
    return run_axioms("fi", L, [
        left_monotone_axiom(L, I, "i", antitone=True),
        right_monotone_axiom(L, I, "ii"),
        _boundary_axiom(I, L, "iii"),
    ])


def check_partial_fuzzy_implication(L: FiniteBoundedLattice, PI: PartialBinaryOp) -> CheckReport:
    b, t = L.bottom, L.top
    for x, y in ((b, b), (t, t), (t, b)):
        if PI.cells[x][y] is None:
            raise BoundaryUndefined(f"cell ({L.labels[x]}, {L.labels[y]}) is undefined")
    return run_axioms("pfi", L, [
        left_monotone_axiom(L, PI, "PI1", antitone=True),
        right_monotone_axiom(L, PI, "PI2"),
        _boundary_axiom(PI, L, "PI3"),
    ])


# --- partial adjoint pairs and partial residuated lattices --------------------------

def pap_axioms(L: FiniteBoundedLattice, otimes: PartialBinaryOp, arrow: PartialBinaryOp) -> list[Axiom]:
    c, a, le = otimes.cells, arrow.cells, L.leq

    def pap3(x, y, z):
        p, r = c[x][y], a[x][z]
        if p is None or r is None:
            return True
        return le[p][z] == le[y][r]

    return [
        both("PAP1", left_monotone_axiom(L, otimes, ""), right_monotone_axiom(L, otimes, "")),
        both("PAP2", left_monotone_axiom(L, arrow, "", antitone=True), right_monotone_axiom(L, arrow, "")),
        Axiom("PAP3", 3, pap3),
    ]


def check_pap(L: FiniteBoundedLattice, otimes: PartialBinaryOp, arrow: PartialBinaryOp) -> CheckReport:
    return run_axioms("pap", L, pap_axioms(L, otimes, arrow))


def prl_axioms(L: FiniteBoundedLattice, otimes: PartialBinaryOp, arrow: PartialBinaryOp) -> list[Axiom]:
    return [
        commutative_axiom(otimes, "PRL1"),
        assoc_directional_axiom(otimes, "PRL2"),
        _unit_axiom(otimes, L.top, "PRL3"),
    ] + pap_axioms(L, otimes, arrow)


def check_prl(L: FiniteBoundedLattice, otimes: PartialBinaryOp, arrow: PartialBinaryOp) -> CheckReport:
    return run_axioms("prl", L, prl_axioms(L, otimes, arrow))


def check_sprl(L: FiniteBoundedLattice, otimes: PartialBinaryOp, arrow: PartialBinaryOp) -> CheckReport:
    c, a, le = otimes.cells, arrow.cells, L.leq

    def spap1(x, y, z):
        if not le[x][y]:
            return True
        if c[x][z] is not None:
            if c[y][z] is None or not le[c[x][z]][c[y][z]]:
                return False
        if c[z][x] is not None:
            if c[z][y] is None or not le[c[z][x]][c[z][y]]:
                return False
        return True

    def spap2(x, y, z):
        if not le[x][y]:
            return True
        if a[x][z] is not None:
            if a[y][z] is None or not le[a[y][z]][a[x][z]]:
                return False
        if a[z][y] is not None:
            if a[z][x] is None or not le[a[z][x]][a[z][y]]:
                return False
        return True

    def spap3(x, y, z):
        p, r = c[x][y], a[x][z]
        left = p is not None and le[p][z]
        right = r is not None and le[y][r]
        return left == right

    return run_axioms("sprl", L, [
        commutative_axiom(otimes, "sPRL1"),
        assoc_directional_axiom(otimes, "sPRL2"),
        _unit_axiom(otimes, L.top, "sPRL3", side="left"),
        Axiom("sPAP1", 3, spap1),
        Axiom("sPAP2", 3, spap2),
        Axiom("sPAP3", 3, spap3),
    ])


def wprl_axioms(L: FiniteBoundedLattice, otimes: PartialBinaryOp, arrow: PartialBinaryOp) -> list[Axiom]:
    c, a = otimes.cells, arrow.cells
    return prl_axioms(L, otimes, arrow) + [
        Axiom("W1", 1, lambda x: a[x][x] is not None and a[x][L.top] is not None),
        Axiom("W2", 2, lambda x, y: a[x][y] is None or c[x][a[x][y]] is not None),
    ]


def check_wprl(L: FiniteBoundedLattice, otimes: PartialBinaryOp, arrow: PartialBinaryOp) -> CheckReport:
    return run_axioms("wprl", L, wprl_axioms(L, otimes, arrow))


def check_residuated_lattice(L: FiniteBoundedLattice, otimes: PartialBinaryOp, arrow: PartialBinaryOp) -> CheckReport:
    """Commutative integral residuated lattice with unit top."""
    c, a, le = otimes.cells, arrow.cells, L.leq

    def adj(x, y, z):
        p, r = c[x][y], a[x][z]
        return p is not None and r is not None and le[p][z] == le[y][r]

    return run_axioms("rl", L, [
        total_axiom(otimes, "total-otimes"),
        total_axiom(arrow, "total-arrow"),
        commutative_axiom(otimes, "comm"),
        assoc_directional_axiom(otimes, "assoc"),
        _unit_axiom(otimes, L.top, "unit"),
        Axiom("adjunction", 3, adj),
    ])


# --- co-residuated structures --------------------------------------------------

def coadjoint_axioms(L: FiniteBoundedLattice, oplus: PartialBinaryOp, ominus: PartialBinaryOp) -> list[Axiom]:
    p, m, le = oplus.cells, ominus.cells, L.leq
    return [
        both("cAP1", left_monotone_axiom(L, oplus, ""), right_monotone_axiom(L, oplus, "")),
        both("cAP2", left_monotone_axiom(L, ominus, ""), right_monotone_axiom(L, ominus, "", antitone=True)),
        Axiom("cAP3", 3, lambda x, y, z: le[z][p[x][y]] == le[m[z][y]][x]),
    ]


def check_coadjoint(L: FiniteBoundedLattice, oplus: PartialBinaryOp, ominus: PartialBinaryOp) -> CheckReport:
    _require_total(oplus, "oplus")
    _require_total(ominus, "ominus")
    return run_axioms("coap", L, coadjoint_axioms(L, oplus, ominus))


def _comm_assoc(op: PartialBinaryOp, name: str) -> Axiom:
    """Commutativity and associativity as one ternary axiom."""
    comm, assoc = commutative_axiom(op).pred, assoc_directional_axiom(op).pred
    return Axiom(name, 3, lambda x, y, z: comm(x, y) and assoc(x, y, z))


def check_corl(L: FiniteBoundedLattice, oplus: PartialBinaryOp, ominus: PartialBinaryOp) -> CheckReport:
    _require_total(oplus, "oplus")
    _require_total(ominus, "ominus")
    return run_axioms("corl", L, [
        _comm_assoc(oplus, "cRL1"),
        _unit_axiom(oplus, L.bottom, "cRL2"),
    ] + coadjoint_axioms(L, oplus, ominus))


def check_pcrl(L: FiniteBoundedLattice, odot: PartialBinaryOp, leadsto: PartialBinaryOp) -> CheckReport:
    c, s, le = odot.cells, leadsto.cells, L.leq

    def cpap3(x, y, z):
        p, r = c[x][y], s[z][y]
        if p is None or r is None:
            return True
        return le[z][p] == le[r][x]

    return run_axioms("pcrl", L, [
        commutative_axiom(odot, "cPRL1"),
        assoc_directional_axiom(odot, "cPRL2"),
        _unit_axiom(odot, L.bottom, "cPRL3"),
        left_monotone_axiom(L, odot, "cPAP1"),
        both("cPAP2", left_monotone_axiom(L, leadsto, ""), right_monotone_axiom(L, leadsto, "", antitone=True)),
        Axiom("cPAP3", 3, cpap3),
    ])


def check_zl_prl(L: FiniteBoundedLattice, oplus: PartialBinaryOp, ominus: PartialBinaryOp) -> CheckReport:
    """Partial commutative monoid with unit bottom, plus a partial adjoint pair."""
    c = oplus.cells
    return run_axioms("zlprl", L, [
        Axiom("i", 0, lambda: True),
        commutative_axiom(oplus, "ii-comm"),
        assoc_symmetric_axiom(oplus, "ii-assoc"),
        Axiom("ii-unit", 1, lambda x: c[x][L.bottom] == x and c[L.bottom][x] == x),
    ] + [Axiom("iii-" + a.name, a.arity, a.pred) for a in pap_axioms(L, oplus, ominus)])


# --- dispatch -------------------------------------------------------------------

_BINARY_CHECKERS = {
    "ptnorm": check_partial_tnorm,
    "ptconorm": check_partial_tconorm,
    "tnorm": check_tnorm,
    "tconorm": check_tconorm,
    "fi": check_fuzzy_implication,
    "pfi": check_partial_fuzzy_implication,
}

_PAIR_CHECKERS = {
    "pap": check_pap,
    "prl": check_prl,
    "sprl": check_sprl,
    "wprl": check_wprl,
    "coap": check_coadjoint,
    "corl": check_corl,
    "pcrl": check_pcrl,
    "zlprl": check_zl_prl,
    "rl": check_residuated_lattice,
}


def check_class(bundle: StructureBundle, claim: Claim) -> CheckReport:
    """Run the checker for one claim; precondition failures become failing reports."""
    L = bundle.lattice
    sig = CLASS_SIGNATURES.get(claim.tag)
    if sig is None:
        raise UnknownClass(f"unknown class tag {claim.tag!r}")
    if len(claim.operands) != len(sig):
        raise UnknownClass(f"class {claim.tag} expects {len(sig)} operand(s), got {len(claim.operands)}")
    args = []
    for kind, name in zip(sig, claim.operands):
        table = bundle.ops if kind == "b" else bundle.unaries
        if name not in table:
            raise UnknownClass(f"claim {claim} references unknown {'op' if kind == 'b' else 'unary'} {name!r}")
        args.append(table[name])
    try:
        if claim.tag in _BINARY_CHECKERS:
            rep = _BINARY_CHECKERS[claim.tag](L, args[0])
        elif claim.tag in _PAIR_CHECKERS:
            rep = _PAIR_CHECKERS[claim.tag](L, args[0], args[1])
        elif claim.tag == "negation":
            rep = check_negation(L, args[0])
        elif claim.tag == "ea":
            rep = check_ea(L, args[0], args[1])
        elif claim.tag == "lea":
            rep = check_lea(L, args[0], args[1])
        else:
            rep = check_quasiresiduated(L, args[0], args[1], args[2])
    except (NotTotal, BoundaryUndefined) as exc:
        rep = CheckReport(claim.tag, [AxiomResult("precondition", False, [Witness("precondition", ())], str(exc))])
    rep.subject = str(claim)
    return rep


def check_claims(bundle: StructureBundle) -> list[CheckReport]:
    return [check_class(bundle, c) for c in bundle.claims]
