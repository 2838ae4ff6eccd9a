"""Backtracking enumeration of partial operations and order reconstruction."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .checkers import (
    Claim,
    StructureBundle,
    check_class,
    check_residuated_lattice,
    check_sprl,
)
from .errors import BadParams, NoConsistentOrder, UnknownClass
from .lattice import FiniteBoundedLattice, dual_lattice
from .orders import bounded_lattices
from .partial import PartialBinaryOp

ENUMERABLE = ("ptnorm", "tnorm", "ptconorm", "tconorm", "sprl", "rl")
DEFAULT_SIZE_BOUND = 5


@dataclass
class EnumerationTask:
    lattice: FiniteBoundedLattice
    cls: str
    cap: int | None = None
    symmetry: bool = True
    size_bound: int = DEFAULT_SIZE_BOUND

    def __post_init__(self):
        if self.cls not in ENUMERABLE:
            raise UnknownClass(f"enumeration supports {', '.join(ENUMERABLE)}; got {self.cls!r}")
        if self.cap is not None and self.cap < 1:
            raise BadParams("cap must be at least 1")


@dataclass
class EnumerationResult:
    bundles: list[StructureBundle]
    count: int
    capped: bool = False
    tables_searched: int = 0


def jobs() -> int:
    env = os.environ.get("PLW_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise BadParams(f"PLW_JOBS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


# --- partial t-norm search -------------------------------------------------

class _TnormSearch:
    """Depth-first completion of a table with the unit row and column fixed.

    Cells are filled in lexicographic order with values tried in the order
    Undefined, 0, 1, ...; each value is bounded above by meet(x, y), which
    monotonicity together with the unit law forces.
    """

    def __init__(self, L: FiniteBoundedLattice, total: bool, symmetry: bool):
        self.L = L
        n, t = L.n, L.top
        self.T: list[list[int | None]] = [[None] * n for _ in range(n)]
        self.assigned = [[False] * n for _ in range(n)]
        for x in range(n):
            self.T[x][t] = self.T[t][x] = x
            self.assigned[x][t] = self.assigned[t][x] = True
        inner = [x for x in range(n) if x != t]
        if symmetry:
            self.cells = [(i, j) for i in inner for j in inner if i <= j]
        else:
            self.cells = [(i, j) for i in inner for j in inner]
        self.symmetry = symmetry
        self.domains = {}
        for i, j in self.cells:
            m = L.meet[i][j]
            vals = [v for v in range(n) if L.leq[v][m]]
            self.domains[(i, j)] = vals if total else [None] + vals
        self.leaves = 0

    def _consistent(self, i: int, j: int) -> bool:
        L, T, A = self.L, self.T, self.assigned
        v = T[i][j]
        if not self.symmetry and A[j][i] and T[j][i] != v:
            return False
        if v is None:
            return True
        le = L.leq
        for p in range(L.n):
            for q in range(L.n):
                if not A[p][q] or (p, q) == (i, j):
                    continue
                w = T[p][q]
                if w is None:
                    continue
                if le[p][i] and le[q][j] and not le[w][v]:
                    return False
                if le[i][p] and le[j][q] and not le[v][w]:
                    return False
        return True

    def _associative(self) -> bool:
        T, n = self.T, self.L.n
        for x, y, z in product(range(n), repeat=3):
            yz = T[y][z]
            if yz is None:
                continue
            r = T[x][yz]
            if r is None:
                continue
            xy = T[x][y]
            if xy is None or T[xy][z] != r:
                return False
        return True

    def run(self, prefix: Sequence[int | None] = ()) -> Iterable[PartialBinaryOp]:
        """Yield every completion; ``prefix`` pins the first cells (used to split work)."""
        yield from self._rec(0, tuple(prefix))

    def _rec(self, k: int, prefix: tuple) -> Iterable[PartialBinaryOp]:
        if k == len(self.cells):
            self.leaves += 1
            if self._associative():
                yield PartialBinaryOp.from_rows(self.T)
            return
        i, j = self.cells[k]
        dom = self.domains[(i, j)] if k >= len(prefix) else [prefix[k]]
        for v in dom:
            self.T[i][j] = v
            self.assigned[i][j] = True
            if self.symmetry:
                self.T[j][i] = v
                self.assigned[j][i] = True
            if self._consistent(i, j):
                yield from self._rec(k + 1, prefix)
        self.T[i][j] = None
        self.assigned[i][j] = False
        if self.symmetry:
            self.T[j][i] = None
            self.assigned[j][i] = False


def _tnorm_worker(args) -> tuple[list[PartialBinaryOp], int]:
    L, total, symmetry, prefix = args
    s = _TnormSearch(L, total, symmetry)
    out = list(s.run(prefix))
    return out, s.leaves


def enumerate_partial_tnorms(L: FiniteBoundedLattice, total: bool = False, symmetry: bool = True,
                             workers: int | None = None) -> tuple[list[PartialBinaryOp], int]:
    """All partial t-norms on L (t-norms when ``total``), plus the number of leaves visited."""
    s = _TnormSearch(L, total, symmetry)
    if not s.cells:
        return list(s.run()), s.leaves
    workers = jobs() if workers is None else workers
    if workers <= 1 or L.n < 5:
        out = list(s.run())
        return out, s.leaves
    first = s.cells[0]
    tasks = [(L, total, symmetry, (v,)) for v in s.domains[first]]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as ex:
        parts = list(ex.map(_tnorm_worker, tasks))
    # the first cell's domain order is the sequential order, so concatenation is deterministic
    return [op for part, _ in parts for op in part], sum(leaves for _, leaves in parts)


def determined_arrow(L: FiniteBoundedLattice, otimes: PartialBinaryOp) -> PartialBinaryOp | None:
    """The only arrow that can satisfy sPAP3 with ``otimes``, or None when none can.

    sPAP3 makes {y : x*y defined, x*y <= z} equal to the down-set of x->z
    (empty when x->z is undefined).
    """
    n, c, le = L.n, otimes.cells, L.leq
    rows = []
    for x in range(n):
        row = []
        for z in range(n):
            S = [y for y in range(n) if c[x][y] is not None and le[c[x][y]][z]]
            if not S:
                row.append(None)
                continue
            top = [m for m in S if all(le[y][m] for y in S)]
            if not top or sorted(L.down_set(top[0])) != sorted(S):
                return None
            row.append(top[0])
        rows.append(row)
    return PartialBinaryOp.from_rows(rows)


def enumerate_class(task: EnumerationTask) -> EnumerationResult:
    L = task.lattice
    if L.n > task.size_bound and task.cap is None:
        raise BadParams(f"lattice size {L.n} exceeds bound {task.size_bound}; supply a cap")
    cls = task.cls
    if cls in ("ptconorm", "tconorm"):
        ops, leaves = enumerate_partial_tnorms(dual_lattice(L), total=cls == "tconorm", symmetry=task.symmetry)
    else:
        ops, leaves = enumerate_partial_tnorms(L, total=cls in ("tnorm", "rl"), symmetry=task.symmetry)

    bundles: list[StructureBundle] = []
    capped = False
    for op in ops:
        if cls in ("sprl", "rl"):
            arrow = determined_arrow(L, op)
            if arrow is None:
                continue
            check = check_sprl if cls == "sprl" else check_residuated_lattice
            if not check(L, op, arrow).passed:
                continue
            ops_map = {"otimes": op, "arrow": arrow}
            claim = Claim(cls, ("otimes", "arrow"))
        else:
            ops_map = {"otimes": op}
            claim = Claim(cls, ("otimes",))
        if task.cap is not None and len(bundles) >= task.cap:
            capped = True
            break
        bundles.append(StructureBundle(f"{cls}#{len(bundles)}", L, ops_map, claims=[claim]))
    return EnumerationResult(bundles, len(bundles), capped, leaves)


# --- order reconstruction ----------------------------------------------------

def violation_count(bundle: StructureBundle) -> int:
    """Number of failing tuples across every claimed axiom."""
    total = 0
    for claim in bundle.claims:
        rep = check_class(bundle, claim)
        for e in rep.entries:
            if e.passed:
                continue
            ax = rep.axioms.get(e.axiom)
            if ax is None:
                total += 1
                continue
            total += sum(1 for t in product(range(bundle.lattice.n), repeat=ax.arity) if not ax.pred(*t))
    return total


def infer_orders(tables: Mapping[str, PartialBinaryOp], claims: Sequence[Claim], labels: Sequence[str],
                 candidates: Sequence[FiniteBoundedLattice] | None = None, best_fit: bool = False,
                 unaries: Mapping | None = None) -> list[FiniteBoundedLattice]:
    """Every bounded-lattice order on ``labels`` under which all claims pass.

    With ``best_fit`` the orders with the fewest failing axiom tuples are
    returned instead of raising when no order is fully consistent.
    """
    n = len(labels)
    if any(op.n != n for op in tables.values()):
        raise BadParams("tables must share the number of labels")
    pool = bounded_lattices(labels) if candidates is None else list(candidates)
    good, scored = [], []
    for L in pool:
        B = StructureBundle("infer", L, dict(tables), dict(unaries or {}), list(claims))
        if all(check_class(B, c).passed for c in claims):
            good.append(L)
        elif best_fit:
            scored.append((violation_count(B), L))
    if good:
        return good
    if best_fit and scored:
        low = min(s for s, _ in scored)
        return [L for s, L in scored if s == low]
    raise NoConsistentOrder(f"no bounded-lattice order on {n} points satisfies {[str(c) for c in claims]}")
