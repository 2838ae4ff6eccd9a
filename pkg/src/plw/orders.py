"""Generation of every partial order / bounded lattice on a set of labeled points."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .errors import MissingBound, NotAPoset
from .lattice import FiniteBoundedLattice, lattice_from_leq


def _subsets(m: int) -> Iterator[frozenset[int]]:
    for mask in range(1 << m):
        yield frozenset(i for i in range(m) if mask >> i & 1)


@lru_cache(maxsize=None)
def labeled_posets(m: int) -> tuple[tuple[tuple[bool, ...], ...], ...]:
    """All partial orders on points ``0..m-1`` as reflexive leq matrices.

    Built point by point: the new point gets a down-closed set of elements
    below it and an up-closed set above it, with everything below it already
    below everything above it.
    """
    if m == 0:
        return ((),)
    out = []
    for P in labeled_posets(m - 1):
        k = m - 1
        subs = list(_subsets(k))
        downs = [D for D in subs if all(a in D for d in D for a in range(k) if P[a][d])]
        ups = [U for U in subs if all(u2 in U for u in U for u2 in range(k) if P[u][u2])]
        for D in downs:
            for U in ups:
                if D & U:
                    continue
                if not all(P[d][u] for d in D for u in U):
                    continue
                rows = [list(r) + [i in D] for i, r in enumerate(P)]
                rows.append([j in U for j in range(k)] + [True])
                out.append(tuple(tuple(r) for r in rows))
    return tuple(out)


def bounded_lattices(labels: Sequence[str]) -> list[FiniteBoundedLattice]:
    """Every bounded-lattice order on the labeled points, in a deterministic order."""
    n = len(labels)
    if n == 1:
        return [lattice_from_leq(labels, [[True]])]
    out = []
    for b in range(n):
        for t in range(n):
            if b == t:
                continue
            mid = [i for i in range(n) if i not in (b, t)]
            for P in labeled_posets(len(mid)):
                leq = [[i == j for j in range(n)] for i in range(n)]
                for i in range(n):
                    leq[b][i] = True
                    leq[i][t] = True
                for a, ia in enumerate(mid):
                    for c, ic in enumerate(mid):
                        if P[a][c]:
                            leq[ia][ic] = True
                try:
                    out.append(lattice_from_leq(labels, leq))
                except (NotAPoset, MissingBound):
                    pass
    out.sort(key=lambda L: L.leq)
    return out
