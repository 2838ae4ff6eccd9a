"""Finite bounded lattices over integer-indexed elements.

Elements are the integers ``0 .. n-1``; ``labels`` only matter for display
and serialization.  Every table is computed once at construction and the
object is immutable afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MissingBound, NotAPoset, UnknownElement


Relation = tuple[tuple[bool, ...], ...]


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        rel[a][b] = True
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return rel


@dataclass(frozen=True)
class FiniteBoundedLattice:
    labels: tuple[str, ...]
    leq: Relation
    meet: tuple[tuple[int, ...], ...] = field(repr=False)
    join: tuple[tuple[int, ...], ...] = field(repr=False)
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise UnknownElement(f"unknown element {label!r}") from None

    def label(self, x: int) -> str:
        return self.labels[x]

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq[x][y]

    def comparable(self, x: int, y: int) -> bool:
        return self.leq[x][y] or self.leq[y][x]

    def down_set(self, x: int) -> list[int]:
        return [z for z in range(self.n) if self.leq[z][x]]

    def up_set(self, x: int) -> list[int]:
        return [z for z in range(self.n) if self.leq[x][z]]

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs ``(x, y)``: ``x < y`` with nothing strictly between."""
        out = []
        for x in range(self.n):
            for y in range(self.n):
                if not self.lt(x, y):
                    continue
                if not any(self.lt(x, z) and self.lt(z, y) for z in range(self.n)):
                    out.append((x, y))
        return out

    def order_pairs(self) -> list[tuple[str, str]]:
        return [(self.labels[a], self.labels[b]) for a, b in self.covers()]

    def join_all(self, elems: Iterable[int]) -> int:
        acc = self.bottom
        for e in elems:
            acc = self.join[acc][e]
        return acc

    def meet_all(self, elems: Iterable[int]) -> int:
        acc = self.top
        for e in elems:
            acc = self.meet[acc][e]
        return acc

    def is_chain(self) -> bool:
        return all(self.comparable(x, y) for x in range(self.n) for y in range(self.n))

    def same_order(self, other: FiniteBoundedLattice) -> bool:
        return self.labels == other.labels and self.leq == other.leq


def lattice_from_leq(labels: Sequence[str], leq: Sequence[Sequence[bool]]) -> FiniteBoundedLattice:
    """Build from a complete order relation; raises if it is not a bounded lattice."""
    n = len(labels)
    rel = tuple(tuple(bool(v) for v in row) for row in leq)
    for i in range(n):
        if not rel[i][i]:
            raise NotAPoset(f"relation is not reflexive at {labels[i]}")
        for j in range(n):
            if i != j and rel[i][j] and rel[j][i]:
                raise NotAPoset(f"antisymmetry violated: {labels[i]} and {labels[j]}")
            if rel[i][j]:
                for k in range(n):
                    if rel[j][k] and not rel[i][k]:
                        raise NotAPoset(f"relation is not transitive at {labels[i]}, {labels[j]}, {labels[k]}")
    if n == 0:
        raise MissingBound("empty carrier has no bounds")

    def least(cands: list[int]) -> int | None:
        for c in cands:
            if all(rel[c][d] for d in cands):
                return c
        return None

    def greatest(cands: list[int]) -> int | None:
        for c in cands:
            if all(rel[d][c] for d in cands):
                return c
        return None

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            lower = [z for z in range(n) if rel[z][x] and rel[z][y]]
            upper = [z for z in range(n) if rel[x][z] and rel[y][z]]
            m = greatest(lower)
            j = least(upper)
            if m is None:
                raise MissingBound(f"no meet for {labels[x]}, {labels[y]}")
            if j is None:
                raise MissingBound(f"no join for {labels[x]}, {labels[y]}")
            meet[x][y] = meet[y][x] = m
            join[x][y] = join[y][x] = j
    everything = list(range(n))
    bottom = least(everything)
    top = greatest(everything)
    if bottom is None or top is None:
        raise MissingBound("no unique bottom/top")
    return FiniteBoundedLattice(
        labels=tuple(str(l) for l in labels),
        leq=rel,
        meet=tuple(map(tuple, meet)),
        join=tuple(map(tuple, join)),
        bottom=bottom,
        top=top,
    )


def build_lattice(labels: Sequence[str], order_pairs: Iterable[tuple[str, str]]) -> FiniteBoundedLattice:
    """Build a lattice from generating pairs ``a <= b``.

    The reflexive-transitive closure of ``order_pairs`` is taken first.

    >>> L = build_lattice(["0", "1", "2", "3"], [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3")])
    >>> L.label(L.meet[1][2]), L.label(L.join[1][2])
    ('0', '3')
    """
    labels = [str(l) for l in labels]
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be distinct")
    pos = {l: i for i, l in enumerate(labels)}
    idx_pairs = []
    for a, b in order_pairs:
        a, b = str(a), str(b)
        if a not in pos or b not in pos:
            raise UnknownElement(f"order pair references unknown element: {a}<={b}")
        idx_pairs.append((pos[a], pos[b]))
    rel = _closure(len(labels), idx_pairs)
    return lattice_from_leq(labels, rel)


def chain(n: int, labels: Sequence[str] | None = None) -> FiniteBoundedLattice:
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    return lattice_from_leq(labels, [[i <= j for j in range(n)] for i in range(n)])


def interval_is_chain(L: FiniteBoundedLattice, x: int) -> bool:
    """True iff the down-set of ``x`` (the interval [bottom, x]) is totally ordered."""
    down = L.down_set(x)
    return all(L.comparable(a, b) for a in down for b in down)


def atoms_below(L: FiniteBoundedLattice, x: int) -> list[int]:
    out = []
    for a in range(L.n):
        if a == L.bottom or not L.le(a, x):
            continue
        if not any(L.lt(L.bottom, b) and L.lt(b, a) for b in range(L.n)):
            out.append(a)
    return out


def dual_lattice(L: FiniteBoundedLattice) -> FiniteBoundedLattice:
    n = L.n
    return FiniteBoundedLattice(
        labels=L.labels,
        leq=tuple(tuple(L.leq[j][i] for j in range(n)) for i in range(n)),
        meet=L.join,
        join=L.meet,
        bottom=L.top,
        top=L.bottom,
    )


def relabel(L: FiniteBoundedLattice, labels: Sequence[str]) -> FiniteBoundedLattice:
    if len(labels) != L.n:
        raise ValueError("label count mismatch")
    return FiniteBoundedLattice(tuple(map(str, labels)), L.leq, L.meet, L.join, L.bottom, L.top)
