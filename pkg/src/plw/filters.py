"""Filters, strong filters, the ~F relation, congruences and quotient PRLs.

All functions work on a residuated pair ``(otimes, arrow)`` over a lattice.
Bundle-level callers resolve the pair with :func:`residuated_pair`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from .checkers import Claim, StructureBundle
from .errors import NotACongruence, NotAFilter, PlwError, QuotientOrderNotLattice, NotAPoset, MissingBound
from .lattice import FiniteBoundedLattice, lattice_from_leq
from .partial import AxiomResult, PartialBinaryOp, Witness

PAIR_TAGS = ("wprl", "prl", "sprl", "rl", "pap")


@dataclass(frozen=True)
class FilterSet:
    members: tuple[int, ...]
    proper: bool

    def labels(self, L: FiniteBoundedLattice) -> list[str]:
        return [L.labels[i] for i in self.members]


@dataclass
class Verdict:
    """Boolean outcome of a filter-level test with per-condition witnesses."""

    ok: bool
    entries: list[AxiomResult] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def failed(self) -> list[str]:
        return [e.axiom for e in self.entries if not e.passed]


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> Partition:
        bl = sorted(tuple(sorted(b)) for b in blocks)
        block_of = [-1] * n
        for i, b in enumerate(bl):
            if not b:
                raise ValueError("empty block")
            for e in b:
                if block_of[e] != -1:
                    raise ValueError("blocks overlap")
                block_of[e] = i
        if -1 in block_of:
            raise ValueError("blocks do not cover the carrier")
        return cls(tuple(bl), tuple(block_of))

    def same(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def labels(self, L: FiniteBoundedLattice) -> list[list[str]]:
        return [[L.labels[e] for e in b] for b in self.blocks]


@dataclass
class QuotientStructure:
    lattice: FiniteBoundedLattice
    otimes: PartialBinaryOp
    arrow: PartialBinaryOp
    partition: Partition
    filter: tuple[int, ...]
    arrow_order_mismatches: list[tuple[int, int]] = field(default_factory=list)

    def as_bundle(self, name: str = "quotient") -> StructureBundle:
        return StructureBundle(name, self.lattice, {"otimes": self.otimes, "arrow": self.arrow},
                               claims=[Claim("prl", ("otimes", "arrow"))])


def _reindex(n: int, blocks) -> Partition:
    """Partition keeping the given block order."""
    block_of = [0] * n
    for i, b in enumerate(blocks):
        for e in b:
            block_of[e] = i
    return Partition(tuple(tuple(sorted(b)) for b in blocks), tuple(block_of))


def residuated_pair(B: StructureBundle) -> tuple[FiniteBoundedLattice, PartialBinaryOp, PartialBinaryOp]:
    for tag in PAIR_TAGS:
        for c in B.claims:
            if c.tag == tag:
                return B.lattice, B.ops[c.operands[0]], B.ops[c.operands[1]]
    if "otimes" in B.ops and "arrow" in B.ops:
        return B.lattice, B.ops["otimes"], B.ops["arrow"]
    raise PlwError(f"bundle {B.name} has no residuated pair")


def _members(L: FiniteBoundedLattice, F: Iterable) -> frozenset[int]:
    return frozenset(L.index(e) if isinstance(e, str) else int(e) for e in F)


def _w(L, name, t) -> list[Witness]:
    return [Witness(name, tuple(L.labels[i] for i in t))]


def _first(L: FiniteBoundedLattice, name: str, arity: int, bad) -> AxiomResult:
    for t in product(range(L.n), repeat=arity):
        if bad(*t):
            return AxiomResult(name, False, _w(L, name, t))
    return AxiomResult(name, True)


def filter_conditions(L, otimes, F) -> list[AxiomResult]:
    c, le = otimes.cells, L.leq
    return [
        AxiomResult("F1", L.top in F, [] if L.top in F else [Witness("F1", (L.labels[L.top],))]),
        _first(L, "F2", 2, lambda x, y: x in F and le[x][y] and y not in F),
        _first(L, "F3", 2, lambda x, y: x in F and y in F and c[x][y] is not None and c[x][y] not in F),
    ]


def is_filter(B: StructureBundle, F: Iterable, pair=None) -> Verdict:
    L, otimes, _ = pair or residuated_pair(B)
    entries = filter_conditions(L, otimes, _members(L, F))
    return Verdict(all(e.passed for e in entries), entries)


def up_sets(L: FiniteBoundedLattice) -> Iterator[frozenset[int]]:
    """Every up-closed subset, generated top-down so closure is checked incrementally."""
    # elements with fewest elements above them come first, so everything above x is decided before x
    order = sorted(range(L.n), key=lambda x: sum(L.leq[x]))
    chosen: set[int] = set()

    def rec(i: int):
        if i == len(order):
            yield frozenset(chosen)
            return
        x = order[i]
        above = [y for y in range(L.n) if L.lt(x, y)]
        # excluding x is always consistent with decisions already made above it
        yield from rec(i + 1)
        if all(y in chosen for y in above):
            chosen.add(x)
            yield from rec(i + 1)
            chosen.discard(x)

    yield from rec(0)


def _sort_sets(sets: Iterable[frozenset[int]]) -> list[tuple[int, ...]]:
    return sorted((tuple(sorted(s)) for s in sets), key=lambda t: (len(t), t))


def enumerate_filters(B: StructureBundle, pair=None) -> list[FilterSet]:
    L, otimes, _ = pair or residuated_pair(B)
    out = []
    for U in up_sets(L):
        if L.top not in U:
            continue
        if all(e.passed for e in filter_conditions(L, otimes, U)):
            out.append(U)
    return [FilterSet(t, len(t) != L.n) for t in _sort_sets(out)]


def strong_conditions(L, otimes, arrow, F) -> list[AxiomResult]:
    c, a = otimes.cells, arrow.cells

    def in_F(v):
        return v is not None and v in F

    def s1(x, y, z):
        zx, zy = a[z][x], a[z][y]
        if zx is None or zy is None or not in_F(a[x][y]):
            return False
        return not in_F(a[zx][zy])

    def s2(x, y, z):
        yz, xz = a[y][z], a[x][z]
        if yz is None or xz is None or not in_F(a[x][y]):
            return False
        return not in_F(a[yz][xz])

    def s3(x, y, z):
        xy = c[x][y]
        if xy is None or a[xy][z] is None:
            return False
        yz = a[y][z]
        if yz is None or not in_F(a[x][yz]):
            return False
        return not in_F(a[xy][z])

    def s4(x, y, z):
        xz, yz = c[x][z], c[y][z]
        if xz is None or yz is None or not in_F(a[x][y]):
            return False
        return not in_F(a[xz][yz])

    return [_first(L, name, 3, f) for name, f in (("s1", s1), ("s2", s2), ("s3", s3), ("s4", s4))]


def is_strong_filter(B: StructureBundle, F: Iterable, pair=None) -> Verdict:
    L, otimes, arrow = pair or residuated_pair(B)
    Fs = _members(L, F)
    if not is_filter(B, Fs, (L, otimes, arrow)):
        raise NotAFilter(f"{sorted(L.labels[i] for i in Fs)} is not a filter")
    entries = strong_conditions(L, otimes, arrow, Fs)
    return Verdict(all(e.passed for e in entries), entries)


def enumerate_strong_filters(B: StructureBundle, pair=None) -> list[FilterSet]:
    pair = pair or residuated_pair(B)
    return [f for f in enumerate_filters(B, pair) if is_strong_filter(B, f.members, pair)]


def mp_closed(B: StructureBundle, F: Iterable, pair=None) -> Verdict:
    """x in F and x->y in F imply y in F."""
    L, _, arrow = pair or residuated_pair(B)
    Fs = _members(L, F)
    a = arrow.cells
    e = _first(L, "mp", 2, lambda x, y: x in Fs and a[x][y] is not None and a[x][y] in Fs and y not in Fs)
    return Verdict(e.passed, [e])


def mp_implies_currying(B: StructureBundle, F: Iterable, pair=None) -> Verdict:
    """(x*y)->z in F implies x->(y->z) in F, wherever those cells are defined."""
    L, otimes, arrow = pair or residuated_pair(B)
    Fs = _members(L, F)
    c, a = otimes.cells, arrow.cells

    def bad(x, y, z):
        xy = c[x][y]
        if xy is None or a[xy][z] is None or a[xy][z] not in Fs:
            return False
        yz = a[y][z]
        if yz is None or a[x][yz] is None:
            return False
        return a[x][yz] not in Fs

    e = _first(L, "curry", 3, bad)
    return Verdict(e.passed, [e])


def sim_matrix(L, arrow, F) -> list[list[bool]]:
    a = arrow.cells

    def inF(v):
        return v is not None and v in F

    return [[inF(a[x][y]) and inF(a[y][x]) for y in range(L.n)] for x in range(L.n)]


def sim_relation(B: StructureBundle, F: Iterable, pair=None) -> Partition | Verdict:
    """The relation x~y iff x->y and y->x both lie in F (undefined counts as outside).

    Returns the partition when the relation is an equivalence, otherwise a
    failing :class:`Verdict` naming the first violated property.
    """
    L, _, arrow = pair or residuated_pair(B)
    Fs = _members(L, F)
    R = sim_matrix(L, arrow, Fs)
    checks = [
        _first(L, "reflexive", 1, lambda x: not R[x][x]),
        _first(L, "symmetric", 2, lambda x, y: R[x][y] and not R[y][x]),
        _first(L, "transitive", 3, lambda x, y, z: R[x][y] and R[y][z] and not R[x][z]),
    ]
    if not all(e.passed for e in checks):
        return Verdict(False, checks)
    blocks: list[list[int]] = []
    for x in range(L.n):
        for b in blocks:
            if R[x][b[0]]:
                b.append(x)
                break
        else:
            blocks.append([x])
    return Partition.from_blocks(L.n, blocks)


def is_congruence(B: StructureBundle, P: Partition, pair=None) -> Verdict:
    L, otimes, arrow = pair or residuated_pair(B)
    c, a = otimes.cells, arrow.cells
    same = P.same

    def c2(x, x1, y, y1):
        if not (same(x, x1) and same(y, y1)):
            return False
        p, q = c[x][y], c[x1][y1]
        return p is not None and q is not None and not same(p, q)

    def c3(x, x1, y, y1):
        if not (same(x, x1) and same(y, y1)):
            return False
        p, q = a[x][y], a[x1][y1]
        return p is not None and q is not None and not same(p, q)

    entries = [AxiomResult("C1", True), _first(L, "C2", 4, c2), _first(L, "C3", 4, c3)]
    return Verdict(all(e.passed for e in entries), entries)


def build_quotient(B: StructureBundle, F: Iterable, pair=None) -> QuotientStructure:
    """Quotient by ~F.

    The block containing top is labeled by top and every other block by its
    first member; blocks are ordered by those representatives.
    """
    L, otimes, arrow = pair or residuated_pair(B)
    Fs = _members(L, F)
    P = sim_relation(B, Fs, (L, otimes, arrow))
    if not isinstance(P, Partition):
        raise NotACongruence(f"~F is not an equivalence: fails {P.failed()}")
    cong = is_congruence(B, P, (L, otimes, arrow))
    if not cong:
        raise NotACongruence(f"~F is not a congruence: fails {cong.failed()}")

    # the block holding top is named by top; every other block by its first member
    def rep(b):
        return L.top if L.top in b else b[0]

    P = _reindex(L.n, sorted(P.blocks, key=rep))
    k = len(P.blocks)
    labels = [L.labels[rep(b)] for b in P.blocks]
    rep_leq = [[any(L.leq[a_][b_] for a_ in P.blocks[i] for b_ in P.blocks[j]) for j in range(k)] for i in range(k)]
    try:
        QL = lattice_from_leq(labels, rep_leq)
    except (NotAPoset, MissingBound) as exc:
        raise QuotientOrderNotLattice(str(exc)) from None

    c, a = otimes.cells, arrow.cells
    one = P.block_of[L.top]

    def q_otimes(i, j):
        # [1] is a unit on both sides; the one-sided reading breaks partial commutativity
        if j == one:
            return i
        if i == one:
            return j
        vals = [c[x][y] for x in P.blocks[i] for y in P.blocks[j]]
        if any(v is None for v in vals):
            return None
        return P.block_of[vals[0]]

    def q_arrow(i, j):
        vals = [a[x][y] for x in P.blocks[i] for y in P.blocks[j]]
        if any(v is None for v in vals):
            return None
        return P.block_of[vals[0]]

    qo = PartialBinaryOp.from_function(k, q_otimes)
    qa = PartialBinaryOp.from_function(k, q_arrow)
    mism = [(i, j) for i in range(k) for j in range(k)
            if qa.cells[i][j] is not None and QL.leq[i][j] != (qa.cells[i][j] == one)]
    return QuotientStructure(QL, qo, qa, P, tuple(sorted(Fs)), mism)
