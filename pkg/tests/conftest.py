from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from hypothesis import strategies as st

from plw.lattice import FiniteBoundedLattice
from plw.orders import bounded_lattices
from plw.partial import PartialBinaryOp


@lru_cache(maxsize=None)
def lattices_of_size(n: int) -> tuple[FiniteBoundedLattice, ...]:
    return tuple(bounded_lattices([str(i) for i in range(n)]))


@lru_cache(maxsize=None)
def lattice_shapes(n: int) -> tuple[FiniteBoundedLattice, ...]:
    """One representative per isomorphism class."""
    seen, out = set(), []
    for L in lattices_of_size(n):
        key = min(tuple(L.leq[p[i]][p[j]] for i in range(n) for j in range(n)) for p in permutations(range(n)))
        if key not in seen:
            seen.add(key)
            out.append(L)
    return tuple(out)


def lattices(min_size: int = 1, max_size: int = 5) -> st.SearchStrategy[FiniteBoundedLattice]:
    return st.integers(min_size, max_size).flatmap(lambda n: st.sampled_from(lattices_of_size(n)))


def partial_ops(n: int, p_undef: bool = True) -> st.SearchStrategy[PartialBinaryOp]:
    cell = st.one_of(st.none(), st.integers(0, n - 1)) if p_undef else st.integers(0, n - 1)
    return st.lists(st.lists(cell, min_size=n, max_size=n), min_size=n, max_size=n).map(PartialBinaryOp.from_rows)


@st.composite
def lattice_and_op(draw, min_size: int = 1, max_size: int = 4, p_undef: bool = True):
    L = draw(lattices(min_size, max_size))
    return L, draw(partial_ops(L.n, p_undef))
