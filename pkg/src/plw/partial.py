"""Partial binary operations and the axiom scans shared by every checker.

A cell is either an element index or ``None`` (undefined).  ``None`` is never
confused with an element: bottom is a legitimate value in most tables.

Every axiom is a predicate over a tuple of element indices.  Scanning walks
tuples in lexicographic order, so the first failing tuple is the minimal
witness, and any witness can be replayed through the same predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from .lattice import FiniteBoundedLattice


@dataclass(frozen=True)
class PartialBinaryOp:
    cells: tuple[tuple[int | None, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | None]]) -> PartialBinaryOp:
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("table must be square")
            for v in r:
                if v is not None and not (0 <= v < n):
                    raise ValueError(f"cell value {v} out of range")
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int], int | None]) -> PartialBinaryOp:
        return cls.from_rows([[f(x, y) for y in range(n)] for x in range(n)])

    @property
    def n(self) -> int:
        return len(self.cells)

    def __call__(self, x: int, y: int) -> int | None:
        return self.cells[x][y]

    def defined(self, x: int, y: int) -> bool:
        return self.cells[x][y] is not None

    def with_cell(self, x: int, y: int, value: int | None) -> PartialBinaryOp:
        rows = [list(r) for r in self.cells]
        rows[x][y] = value
        return PartialBinaryOp.from_rows(rows)

    def transpose(self) -> PartialBinaryOp:
        n = self.n
        return PartialBinaryOp(tuple(tuple(self.cells[y][x] for y in range(n)) for x in range(n)))

    def defined_count(self) -> int:
        return sum(v is not None for r in self.cells for v in r)


@dataclass(frozen=True)
class UnaryOpTable:
    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    @property
    def n(self) -> int:
        return len(self.image)


@dataclass(frozen=True)
class Witness:
    tag: str
    elements: tuple[str, ...]


@dataclass(frozen=True)
class Axiom:
    """A universally quantified condition: ``pred`` must hold on every tuple."""

    name: str
    arity: int
    pred: Callable[..., bool]


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witnesses: list[Witness] = field(default_factory=list)
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed


def scan(L: FiniteBoundedLattice, ax: Axiom) -> AxiomResult:
    pred = ax.pred
    for t in product(range(L.n), repeat=ax.arity):
        if not pred(*t):
            return AxiomResult(ax.name, False, [Witness(ax.name, tuple(L.labels[i] for i in t))])
    return AxiomResult(ax.name, True)


def failing_tuples(L: FiniteBoundedLattice, ax: Axiom) -> list[tuple[int, ...]]:
    return [t for t in product(range(L.n), repeat=ax.arity) if not ax.pred(*t)]


def apply(op: PartialBinaryOp, x: int, y: int) -> int | None:
    return op.cells[x][y]


def is_total(op: PartialBinaryOp) -> bool:
    return all(v is not None for r in op.cells for v in r)


# --- axiom factories -------------------------------------------------------

def total_axiom(op: PartialBinaryOp, name: str = "total") -> Axiom:
    c = op.cells
    return Axiom(name, 2, lambda x, y: c[x][y] is not None)


def commutative_axiom(op: PartialBinaryOp, name: str = "comm") -> Axiom:
    c = op.cells
    return Axiom(name, 2, lambda x, y: c[x][y] is None or c[y][x] == c[x][y])


def assoc_directional_axiom(op: PartialBinaryOp, name: str = "assoc") -> Axiom:
    c = op.cells

    def pred(x, y, z):
        yz = c[y][z]
        if yz is None or c[x][yz] is None:
            return True
        xy = c[x][y]
        return xy is not None and c[xy][z] == c[x][yz]

    return Axiom(name, 3, pred)


def assoc_symmetric_axiom(op: PartialBinaryOp, name: str = "assoc") -> Axiom:
    c = op.cells

    def pred(x, y, z):
        xy, yz = c[x][y], c[y][z]
        left = c[xy][z] if xy is not None else None
        right = c[x][yz] if yz is not None else None
        return left == right

    return Axiom(name, 3, pred)


def monotone_axiom(L: FiniteBoundedLattice, op: PartialBinaryOp, name: str = "mono") -> Axiom:
    c, le = op.cells, L.leq

    def pred(x, h, y, k):
        if not (le[x][y] and le[h][k]):
            return True
        a, b = c[x][h], c[y][k]
        return a is None or b is None or le[a][b]

    return Axiom(name, 4, pred)


def left_monotone_axiom(L: FiniteBoundedLattice, op: PartialBinaryOp, name: str, antitone: bool = False) -> Axiom:
    """x<=y with x*z, y*z defined gives x*z <= y*z (>= when ``antitone``)."""
    c, le = op.cells, L.leq

    def pred(x, y, z):
        if not le[x][y]:
            return True
        a, b = c[x][z], c[y][z]
        if a is None or b is None:
            return True
        return le[b][a] if antitone else le[a][b]

    return Axiom(name, 3, pred)


def right_monotone_axiom(L: FiniteBoundedLattice, op: PartialBinaryOp, name: str, antitone: bool = False) -> Axiom:
    """x<=y with z*x, z*y defined gives z*x <= z*y (>= when ``antitone``)."""
    c, le = op.cells, L.leq

    def pred(x, y, z):
        if not le[x][y]:
            return True
        a, b = c[z][x], c[z][y]
        if a is None or b is None:
            return True
        return le[b][a] if antitone else le[a][b]

    return Axiom(name, 3, pred)


def both(name: str, a: Axiom, b: Axiom) -> Axiom:
    """Conjunction of two same-arity axioms under one name."""
    assert a.arity == b.arity
    return Axiom(name, a.arity, lambda *t: a.pred(*t) and b.pred(*t))


def is_commutative_partial(L: FiniteBoundedLattice, op: PartialBinaryOp) -> AxiomResult:
    return scan(L, commutative_axiom(op))


def is_associative_directional(L: FiniteBoundedLattice, op: PartialBinaryOp) -> AxiomResult:
    return scan(L, assoc_directional_axiom(op))


def is_associative_symmetric(L: FiniteBoundedLattice, op: PartialBinaryOp) -> AxiomResult:
    return scan(L, assoc_symmetric_axiom(op))


def is_monotone_partial(L: FiniteBoundedLattice, op: PartialBinaryOp) -> AxiomResult:
    return scan(L, monotone_axiom(L, op))


# --- restriction and stock tables -----------------------------------------

def restrict(op: PartialBinaryOp, sub: Sequence[int]) -> tuple[PartialBinaryOp, list[tuple[int, int]]]:
    """Restrict ``op`` to ``sub``, re-indexed in the given order.

    Returns the restricted table plus the original-index cells whose value
    fell outside ``sub`` and were made undefined.
    """
    pos = {e: i for i, e in enumerate(sub)}
    dropped = []
    rows = []
    for a in sub:
        row = []
        for b in sub:
            v = op.cells[a][b]
            if v is not None and v not in pos:
                dropped.append((a, b))
                v = None
            row.append(None if v is None else pos[v])
        rows.append(row)
    return PartialBinaryOp.from_rows(rows), dropped


def total_min(L: FiniteBoundedLattice) -> PartialBinaryOp:
    return PartialBinaryOp(L.meet)


def total_max(L: FiniteBoundedLattice) -> PartialBinaryOp:
    return PartialBinaryOp(L.join)


def goedel_implication(L: FiniteBoundedLattice) -> PartialBinaryOp:
    """Residuum of meet; a cell is undefined where no greatest solution exists."""
    n = L.n

    def f(x, y):
        sols = [z for z in range(n) if L.le(L.meet[x][z], y)]
        j = L.join_all(sols)
        return j if j in sols else None

    return PartialBinaryOp.from_function(n, f)
