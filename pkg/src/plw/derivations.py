"""Constructions producing new operations: residuated (co-)implications,
effect-algebra bridges, partial fuzzy implication generators and duality."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .checkers import (
    Claim,
    StructureBundle,
    check_lea,
    check_negation,
    check_partial_fuzzy_implication,
    check_partial_tconorm,
    check_partial_tnorm,
    check_zl_prl,
)
from .errors import (
    BoundaryUndefined,
    GridNotClosed,
    InputNotNegation,
    InputNotPFI,
    NotAnLEA,
    NotAPartialTconorm,
    NotAPartialTnorm,
    NotZlPrl,
)
from .lattice import FiniteBoundedLattice, atoms_below, dual_lattice, interval_is_chain
from .partial import PartialBinaryOp, UnaryOpTable

EmptySup = Literal["undef", "bottom"]


@dataclass
class DerivationOutcome:
    op: PartialBinaryOp
    diagnostics: dict[tuple[int, int], str] = field(default_factory=dict)

    def flagged(self, note: str) -> list[tuple[int, int]]:
        return sorted(c for c, d in self.diagnostics.items() if d == note)


def derive_pri(L: FiniteBoundedLattice, tnorm: PartialBinaryOp, empty_sup: EmptySup = "undef",
               require_tnorm: bool = True) -> DerivationOutcome:
    """Cell (a,b) is sup{x : a*x defined and a*x <= b}.

    Finite lattices always have the supremum; the cell is flagged when it is
    not itself a member of the set.  An empty set gives Undefined (or bottom
    under ``empty_sup="bottom"``).
    """
    if require_tnorm:
        rep = check_partial_tnorm(L, tnorm)
        if not rep.passed:
            raise NotAPartialTnorm(f"not a partial t-norm: fails {rep.failed()}")
    c, n = tnorm.cells, L.n
    rows: list[list[int | None]] = []
    diag: dict[tuple[int, int], str] = {}
    for a in range(n):
        row = []
        for b in range(n):
            S = [x for x in range(n) if c[a][x] is not None and L.leq[c[a][x]][b]]
            if not S:
                diag[(a, b)] = "S-empty"
                row.append(L.bottom if empty_sup == "bottom" else None)
                continue
            s = L.join_all(S)
            if s not in S:
                diag[(a, b)] = "sup-not-attained"
            row.append(s)
        rows.append(row)
    return DerivationOutcome(PartialBinaryOp.from_rows(rows), diag)


def derive_prci(L: FiniteBoundedLattice, tconorm: PartialBinaryOp, require_tconorm: bool = True) -> DerivationOutcome:
    """Cell (a,b) is inf{x : a*x defined and a*x >= b}; Undefined when that set is empty."""
    if require_tconorm:
        rep = check_partial_tconorm(L, tconorm)
        if not rep.passed:
            raise NotAPartialTconorm(f"not a partial t-conorm: fails {rep.failed()}")
    c, n = tconorm.cells, L.n
    rows: list[list[int | None]] = []
    diag: dict[tuple[int, int], str] = {}
    for a in range(n):
        row = []
        for b in range(n):
            I = [x for x in range(n) if c[a][x] is not None and L.leq[b][c[a][x]]]
            if not I:
                diag[(a, b)] = "I-empty"
                row.append(None)
                continue
            m = L.meet_all(I)
            if m not in I:
                diag[(a, b)] = "inf-not-attained"
            row.append(m)
        rows.append(row)
    return DerivationOutcome(PartialBinaryOp.from_rows(rows), diag)


# --- lattice effect algebras ------------------------------------------------

def _lea_parts(E: StructureBundle) -> tuple[FiniteBoundedLattice, PartialBinaryOp, UnaryOpTable]:
    claim = next((c for c in E.claims if c.tag in ("lea", "ea")), None)
    if claim is not None:
        plus, comp = E.ops[claim.operands[0]], E.unaries[claim.operands[1]]
    elif "plus" in E.ops and "comp" in E.unaries:
        plus, comp = E.ops["plus"], E.unaries["comp"]
    else:
        raise NotAnLEA(f"bundle {E.name} has no effect-algebra operations")
    rep = check_lea(E.lattice, plus, comp)
    if not rep.passed:
        raise NotAnLEA(f"bundle {E.name} is not a lattice effect algebra: fails {rep.failed()}")
    return E.lattice, plus, comp


def lea_tnorm(E: StructureBundle) -> PartialBinaryOp:
    """x*y := (x' + y')' , defined iff x' <= y."""
    L, plus, comp = _lea_parts(E)
    p = plus.cells

    def f(x, y):
        if not L.leq[comp(x)][y]:
            return None
        s = p[comp(x)][comp(y)]
        return None if s is None else comp(s)

    return PartialBinaryOp.from_function(L.n, f)


def lea_arrow(E: StructureBundle) -> PartialBinaryOp:
    """x->y := x' + y, defined iff y <= x."""
    L, plus, comp = _lea_parts(E)
    return PartialBinaryOp.from_function(
        L.n, lambda x, y: plus.cells[comp(x)][y] if L.leq[y][x] else None)


def lea_prl(E: StructureBundle) -> StructureBundle:
    return StructureBundle(
        f"{E.name}:prl",
        E.lattice,
        {"otimes": lea_tnorm(E), "arrow": lea_arrow(E)},
        claims=[Claim("prl", ("otimes", "arrow"))],
    )


def sasaki_arrow(E: StructureBundle) -> PartialBinaryOp:
    """x' + (x meet y); always defined since x meet y <= x = x''."""
    L, plus, comp = _lea_parts(E)
    return PartialBinaryOp.from_function(L.n, lambda x, y: plus.cells[comp(x)][L.meet[x][y]])


def ea_difference(plus: PartialBinaryOp, x: int, z: int) -> int | None:
    """The w with z + w = x, if any."""
    for w in range(plus.n):
        if plus.cells[z][w] == x:
            return w
    return None


def is_implication(E: StructureBundle) -> PartialBinaryOp:
    L, plus, comp = _lea_parts(E)

    def f(x, y):
        if L.leq[x][y]:
            return L.top
        if interval_is_chain(L, x):
            atoms = atoms_below(L, x)
            if len(atoms) == 1 and ea_difference(plus, x, L.meet[x][y]) == atoms[0]:
                return comp(atoms[0])
        return L.bottom

    return PartialBinaryOp.from_function(L.n, f)


# --- partial fuzzy implication generators ---------------------------------

def _require_pfi(L, PI, N):
    try:
        rep = check_partial_fuzzy_implication(L, PI)
    except BoundaryUndefined as exc:
        raise InputNotPFI(str(exc)) from None
    if not rep.passed:
        raise InputNotPFI(f"not a partial fuzzy implication: fails {rep.failed()}")
    rep = check_negation(L, N)
    if not rep.passed:
        raise InputNotNegation(f"not a negation: fails {rep.failed()}")


def pfi_reciprocal(L: FiniteBoundedLattice, PI: PartialBinaryOp, N: UnaryOpTable, check: bool = True) -> PartialBinaryOp:
    if check:
        _require_pfi(L, PI, N)
    return PartialBinaryOp.from_function(L.n, lambda u, v: PI.cells[N(v)][N(u)])


def pfi_min_combine(L: FiniteBoundedLattice, PI: PartialBinaryOp, N: UnaryOpTable, check: bool = True) -> PartialBinaryOp:
    if check:
        _require_pfi(L, PI, N)
    PIN = pfi_reciprocal(L, PI, N, check=False)

    def f(x, y):
        p, q = PI.cells[x][y], PIN.cells[x][y]
        if p is None or q is None:
            return None
        return L.meet[L.join[p][N(x)]][L.join[q][y]]

    return PartialBinaryOp.from_function(L.n, f)


def grid_values(denominator: int) -> list[Fraction]:
    return [Fraction(k, denominator) for k in range(denominator + 1)]


def pfi_vertical_splice(PI1: PartialBinaryOp, PI2: PartialBinaryOp, a: Fraction, denominator: int) -> PartialBinaryOp:
    """Splice two PFIs on the grid {k/d}: PI1 rescaled onto [0,a], PI2 onto [a,1].

    The third branch is guarded by v > a.
    """
    a = Fraction(a)
    if not 0 < a < 1:
        raise GridNotClosed("a must lie strictly between 0 and 1")
    grid = grid_values(denominator)
    pos = {g: i for i, g in enumerate(grid)}
    if a not in pos:
        raise GridNotClosed(f"a={a} is not on the grid 1/{denominator}")
    n = len(grid)
    if PI1.n != n or PI2.n != n:
        raise GridNotClosed("operation size does not match the grid")

    def at(v: Fraction) -> int:
        if v not in pos:
            raise GridNotClosed(f"{v} is not on the grid 1/{denominator}")
        return pos[v]

    def f(i, j):
        u, v = grid[i], grid[j]
        if u == 0:
            return n - 1
        if v <= a:
            inner = PI1.cells[i][at(v / a)]
            return None if inner is None else at(a * grid[inner])
        inner = PI2.cells[i][at((v - a) / (1 - a))]
        return None if inner is None else at(a + (1 - a) * grid[inner])

    return PartialBinaryOp.from_function(n, f)


# --- duality ---------------------------------------------------------------

def _zl_parts(B: StructureBundle) -> tuple[PartialBinaryOp, PartialBinaryOp]:
    claim = next((c for c in B.claims if c.tag == "zlprl"), None)
    if claim is not None:
        return B.ops[claim.operands[0]], B.ops[claim.operands[1]]
    if "oplus" in B.ops and "ominus" in B.ops:
        return B.ops["oplus"], B.ops["ominus"]
    raise NotZlPrl(f"bundle {B.name} has no (oplus, ominus) pair")


def dualize_to_pcrl(B: StructureBundle, check: bool = True) -> StructureBundle:
    """Reverse the order; odot := oplus and a ~> b := b (-) a.

    The unit of oplus is bottom of the original order, which becomes the top
    of the dual.  Labels are kept, so bottom and top trade roles.
    """
    oplus, ominus = _zl_parts(B)
    if check:
        rep = check_zl_prl(B.lattice, oplus, ominus)
        if not rep.passed:
            raise NotZlPrl(f"not a zL-PRL: fails {rep.failed()}")
    D = dual_lattice(B.lattice)
    ops = {"odot": oplus, "leadsto": ominus.transpose()}
    return StructureBundle(f"{B.name}:dual", D, ops, claims=[Claim("pcrl", ("odot", "leadsto"))])


def undualize(B: StructureBundle) -> StructureBundle:
    """Inverse of :func:`dualize_to_pcrl`."""
    ops = {"oplus": B.ops["odot"], "ominus": B.ops["leadsto"].transpose()}
    return StructureBundle(B.name.removesuffix(":dual"), dual_lattice(B.lattice), ops,
                           claims=[Claim("zlprl", ("oplus", "ominus"))])
