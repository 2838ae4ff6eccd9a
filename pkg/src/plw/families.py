"""Builtin registry: worked examples as frozen bundles, parametric families,
lattice effect algebras and rational-grid restrictions of unit-interval
operations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .checkers import Claim, StructureBundle
from .errors import BadParams, GridNotClosed, UnknownBuiltin
from .lattice import FiniteBoundedLattice, build_lattice, chain
from .partial import PartialBinaryOp, UnaryOpTable, goedel_implication, total_min

# --- reconstructed orders ----------------------------------------------------
# Each entry lists cover pairs.  How each was chosen is recorded in the
# project's decision ledger; the short notes below are reminders only.

FIGURES: dict[str, tuple[tuple[str, ...], tuple[tuple[str, str], ...]]] = {
    # pentagon: the only order under which the listed filters of ex4.21 come out
    "fig1": (("0", "1", "2", "3", "4"), (("0", "1"), ("1", "2"), ("2", "4"), ("0", "3"), ("3", "4"))),
    # first of 19 orders consistent with ex2.12 and ex5.11 in enumeration order
    "fig2": (("0", "1", "2", "3", "4"), (("0", "1"), ("0", "2"), ("0", "3"), ("1", "4"), ("2", "4"), ("3", "4"))),
    # unique order under which the sup construction maps table 3 onto table 4
    "fig3": (("0", "1", "2", "3", "4"), (("0", "3"), ("3", "1"), ("3", "2"), ("1", "4"), ("2", "4"))),
    # diamond: unique order for ex4.11
    "fig4": (("0", "1", "2", "3"), (("0", "1"), ("0", "2"), ("1", "3"), ("2", "3"))),
    "fig5": (("0", "1", "2", "3", "4", "5"),
             (("0", "1"), ("0", "2"), ("0", "3"), ("3", "4"), ("1", "5"), ("2", "5"), ("4", "5"))),
    "fig6": (("0", "1", "2", "3", "4", "5"),
             (("0", "1"), ("1", "2"), ("2", "5"), ("0", "3"), ("3", "5"), ("0", "4"), ("4", "5"))),
    "fig7": (("0", "3"), (("0", "3"),)),
    "fig8": (("0", "3", "4"), (("0", "3"), ("3", "4"))),
    "fig9": (("0", "3", "4", "5"), (("0", "3"), ("0", "4"), ("3", "5"), ("4", "5"))),
}


def figure(name: str) -> FiniteBoundedLattice:
    if name not in FIGURES:
        raise UnknownBuiltin(f"unknown figure {name!r}")
    labels, pairs = FIGURES[name]
    return build_lattice(labels, pairs)


# --- golden tables (rows in label order, '-' undefined) ----------------------

TABLES: dict[int, tuple[tuple[str, ...], tuple[str, ...]]] = {
    1: (("0", "1", "2", "3", "4"), ("- - - - 0", "- - 0 - 1", "- 0 1 - 2", "- - - 0 3", "0 1 2 3 4")),
    2: (("0", "1", "2", "3", "4"), ("- - - - 0", "- - - 0 1", "- - 0 - 2", "- 0 - - 3", "0 1 2 3 4")),
    3: (("0", "1", "2", "3", "4"), ("- - - - 0", "- 3 3 2 1", "- 3 3 2 2", "- 2 2 3 3", "0 1 2 3 4")),
    4: (("0", "1", "2", "3", "4"), ("4 4 4 4 4", "- 4 4 4 4", "- 4 4 4 4", "- 4 4 4 4", "0 1 2 3 4")),
    5: (("0", "1", "2", "3"), ("- - 0 0", "- 1 - 1", "0 - 2 2", "0 1 2 3")),
    6: (("0", "1", "2", "3"), ("3 - - -", "2 3 - -", "0 - - -", "0 1 - -")),
    7: (("0", "1", "2", "3", "4"), ("- - - - 0", "- - - 0 1", "- - 2 - 2", "- 0 - 3 3", "0 1 2 3 4")),
    8: (("0", "1", "2", "3", "4"), ("4 4 4 4 4", "3 4 4 - 4", "3 - 4 - 4", "2 2 - 4 4", "0 1 2 3 4")),
    9: (("0", "1", "2", "3"), ("- - - 0", "- - 0 1", "- 0 - 2", "0 1 2 3")),
    10: (("0", "1", "2", "3"), ("3 - - 3", "- 3 - 3", "- 1 3 3", "0 1 2 3")),
    11: (("0", "1", "2", "3", "4"), ("- - - - 0", "- - - 0 1", "- - 2 0 2", "- 0 0 3 3", "0 1 2 3 4")),
    12: (("0", "1", "2", "3", "4"), ("4 4 4 4 4", "3 4 4 - 4", "3 - 4 - 4", "- - - 4 4", "0 1 2 3 4")),
    13: (("0", "1", "2", "3", "4", "5"),
         ("0 - - 0 0 0", "- - - - - 1", "- - - - - 2", "0 - - 0 0 3", "0 - - 0 4 4", "0 1 2 3 4 5")),
    14: (("0", "1", "2", "3", "4", "5"),
         ("5 5 5 5 5 5", "- 5 - - - 5", "- - 5 - - 5", "4 - - 5 5 5", "3 - - 3 5 5", "0 1 2 3 4 5")),
    15: (("0", "1", "2", "3", "4", "5"),
         ("- - - - - 0", "- - 0 - - 1", "- 0 2 - - 2", "0 - - 0 - 3", "0 - - - 0 4", "0 1 2 3 4 5")),
    16: (("0", "1", "2", "3", "4", "5"),
         ("5 5 5 5 5 5", "2 5 - - - 5", "1 1 5 - - 5", "3 - - 5 - 5", "4 - - - 5 5", "0 1 2 3 4 5")),
    17: (("0", "1", "2", "3", "4"), ("0 1 2 3 4", "1 2 2 - -", "2 2 2 - -", "3 - - 3 -", "4 - - - -")),
    18: (("0", "1", "2", "3", "4"), ("0 1 2 3 4", "1 1 - - -", "2 - 2 - -", "3 - - 3 -", "4 - - - -")),
    19: (("0", "1", "2", "3"), ("0 1 2 3", "1 - - -", "2 - - -", "3 - - 3")),
    20: (("0", "1", "2", "3"), ("0 - - -", "- 1 3 1", "- 3 2 2", "- - - 3")),
    21: (("0", "1", "2", "3", "4"), ("0 1 2 3 4", "1 - - - -", "2 - - - -", "3 - - - -", "4 - - - -")),
    22: (("0", "1", "2", "3", "4"), ("0 0 0 0 0", "- 1 - - -", "- - 2 - 2", "- 2 2 3 0", "- - - - 4")),
    23: (("0", "1", "2", "3"), ("- - - 0", "- 1 0 1", "- 0 - 2", "0 1 2 3")),
    24: (("0", "1", "2", "3"), ("3 3 - 3", "2 3 - 3", "1 - 3 3", "0 1 2 3")),
    25: (("0", "3"), ("- 0", "0 3")),
    26: (("0", "3"), ("3 -", "- 3")),
    27: (("0", "3", "4"), ("- - 0", "- 0 3", "0 3 4")),
    28: (("0", "3", "4"), ("- - -", "- 4 -", "0 - 4")),
    29: (("0", "3", "4", "5"), ("- - - 0", "- 0 - 3", "- - 0 4", "0 3 4 5")),
    30: (("0", "3", "4", "5"), ("5 - - -", "- 5 - -", "- - 5 -", "0 - - 5")),
}


def golden_table(number: int) -> PartialBinaryOp:
    labels, rows = TABLES[number]
    pos = {lbl: i for i, lbl in enumerate(labels)}
    return PartialBinaryOp.from_rows([[None if c == "-" else pos[c] for c in r.split()] for r in rows])


@dataclass(frozen=True)
class _Example:
    figure: str
    tables: tuple[int, ...]
    names: tuple[str, ...]
    claims: tuple[tuple[str, tuple[str, ...]], ...]


_PAIR = ("otimes", "arrow")
_CO = ("odot", "leadsto")

EXAMPLES: dict[str, _Example] = {
    "ex2.11": _Example("fig1", (1,), ("odot",), (("ptnorm", ("odot",)),)),
    "ex2.12": _Example("fig2", (2,), ("odot",), (("ptnorm", ("odot",)),)),
    "ex3.4": _Example("fig3", (3, 4), ("odot", "arrow"), (("ptnorm", ("odot",)),)),
    "ex4.11": _Example("fig4", (5, 6), _PAIR, (("prl", _PAIR),)),
    "ex4.12": _Example("fig1", (7, 8), _PAIR, (("prl", _PAIR),)),
    "ex4.20": _Example("fig4", (9, 10), _PAIR, (("wprl", _PAIR),)),
    "ex4.21": _Example("fig1", (11, 12), _PAIR, (("wprl", _PAIR),)),
    "ex4.22": _Example("fig5", (13, 14), _PAIR, (("wprl", _PAIR),)),
    "ex4.23": _Example("fig6", (15, 16), _PAIR, (("wprl", _PAIR),)),
    "ex5.10": _Example("fig1", (17,), ("odot",), (("ptconorm", ("odot",)),)),
    "ex5.11": _Example("fig2", (18,), ("odot",), (("ptconorm", ("odot",)),)),
    "ex5.15": _Example("fig4", (19, 20), _CO, (("pcrl", _CO),)),
    "ex5.16": _Example("fig1", (21, 22), _CO, (("pcrl", _CO),)),
    "ex6.10": _Example("fig4", (23, 24), _PAIR, (("wprl", _PAIR),)),
    "ex6.22": _Example("fig7", (25, 26), _PAIR, (("prl", _PAIR),)),
    "ex6.23": _Example("fig8", (27, 28), _PAIR, (("prl", _PAIR),)),
    "ex6.24": _Example("fig9", (29, 30), _PAIR, (("prl", _PAIR),)),
}


def _example(name: str) -> StructureBundle:
    ex = EXAMPLES[name]
    L = figure(ex.figure)
    for t in ex.tables:
        if TABLES[t][0] != L.labels:
            raise AssertionError(f"table {t} labels do not match {ex.figure}")
    ops = {nm: golden_table(t) for nm, t in zip(ex.names, ex.tables)}
    return StructureBundle(name, L, ops, claims=[Claim(tag, ops_) for tag, ops_ in ex.claims])


# --- rational grids ------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    denominator: int
    alpha: Fraction | None = None

    def __post_init__(self):
        if not isinstance(self.denominator, int) or self.denominator < 1:
            raise BadParams("denominator must be a positive integer")
        if self.alpha is not None:
            a = Fraction(self.alpha)
            object.__setattr__(self, "alpha", a)
            if not 0 <= a <= 1 or (a * self.denominator).denominator != 1:
                raise BadParams(f"alpha={a} is not on the grid 1/{self.denominator}")

    def values(self) -> list[Fraction]:
        return [Fraction(k, self.denominator) for k in range(self.denominator + 1)]

    def suffix(self) -> str:
        alpha = "" if self.alpha is None else f",alpha={self.alpha}"
        return f"[d={self.denominator}{alpha}]"


def grid_label(v: Fraction) -> str:
    return str(v)


def grid_lattice(spec: GridSpec) -> FiniteBoundedLattice:
    return chain(spec.denominator + 1, [grid_label(v) for v in spec.values()])


HALF = Fraction(1, 2)
Formula = Callable[[Fraction, Fraction, Fraction], "Fraction | None"]

# (formula(x, y, alpha), class tag, needs alpha)
GRID_TNORMS: dict[str, tuple[Formula, str, bool]] = {
    "ex2.6": (lambda x, y, a: None if x <= HALF and y <= HALF else min(x, y), "ptnorm", False),
    "ex2.7": (lambda x, y, a: min(x, y) if (x >= HALF and y >= HALF) or x == 1 or y == 1 else None, "ptnorm", False),
    "ex2.8": (lambda x, y, a: min(x, y) if x + y <= 1 or x == 1 or y == 1 else None, "ptnorm", False),
    "ex2.9": (lambda x, y, a: min(x, y) if x + y <= HALF or x == 1 or y == 1 else None, "ptnorm", False),
    "ex2.10": (lambda x, y, a: min(x, y) if x + y <= a or x == 1 or y == 1 else None, "ptnorm", True),
    "ex5.5": (lambda x, y, a: None if x >= HALF and y >= HALF else max(x, y), "ptconorm", False),
    "ex5.6": (lambda x, y, a: max(x, y) if (x <= HALF and y <= HALF) or x == 0 or y == 0 else None, "ptconorm", False),
    "ex5.7": (lambda x, y, a: max(x, y) if x + y <= 1 or x == 0 or y == 0 else None, "ptconorm", False),
    "ex5.8": (lambda x, y, a: max(x, y) if x + y <= HALF or x == 0 or y == 0 else None, "ptconorm", False),
    "ex5.9": (lambda x, y, a: max(x, y) if x + y <= a or x == 0 or y == 0 else None, "ptconorm", True),
}

GRID_PAIRS: dict[str, tuple[Formula, Formula, bool]] = {
    "ex6.5": (GRID_TNORMS["ex2.6"][0], lambda x, y, a: Fraction(1) if x <= y else y, False),
    "ex6.6": (GRID_TNORMS["ex2.8"][0], lambda x, y, a: Fraction(1) if x <= y else max(1 - x, y), False),
    "ex6.7": (GRID_TNORMS["ex2.10"][0], lambda x, y, a: Fraction(1) if x <= y else max(max(a - x, Fraction(0)), y), True),
}

DEFAULT_ALPHA = HALF


def _materialize(spec: GridSpec, f: Formula) -> PartialBinaryOp:
    vals = spec.values()
    pos = {v: i for i, v in enumerate(vals)}
    alpha = spec.alpha if spec.alpha is not None else DEFAULT_ALPHA

    def cell(i, j):
        v = f(vals[i], vals[j], alpha)
        if v is None:
            return None
        if v not in pos:
            raise GridNotClosed(f"value {v} is not on the grid 1/{spec.denominator}")
        return pos[v]

    return PartialBinaryOp.from_function(len(vals), cell)


def _resolve_spec(spec: GridSpec | None, needs_alpha: bool) -> GridSpec:
    spec = spec or GridSpec(4)
    if needs_alpha and spec.alpha is None:
        if (DEFAULT_ALPHA * spec.denominator).denominator != 1:
            raise BadParams(f"default alpha {DEFAULT_ALPHA} is off the grid 1/{spec.denominator}; pass alpha")
        spec = GridSpec(spec.denominator, DEFAULT_ALPHA)
    return spec


def grid_bundle(example: str, spec: GridSpec | None = None) -> StructureBundle:
    if example not in GRID_TNORMS:
        raise UnknownBuiltin(f"unknown grid family {example!r}")
    f, tag, needs_alpha = GRID_TNORMS[example]
    spec = _resolve_spec(spec, needs_alpha)
    op = _materialize(spec, f)
    return StructureBundle(f"grid:{example}{spec.suffix()}", grid_lattice(spec), {"odot": op}, claims=[Claim(tag, ("odot",))])


def builtin_grid_pair(example: str, spec: GridSpec | None = None) -> StructureBundle:
    if example not in GRID_PAIRS:
        raise UnknownBuiltin(f"unknown grid pair {example!r}")
    fo, fa, needs_alpha = GRID_PAIRS[example]
    spec = _resolve_spec(spec, needs_alpha)
    ops = {"otimes": _materialize(spec, fo), "arrow": _materialize(spec, fa)}
    return StructureBundle(f"grid:{example}{spec.suffix()}", grid_lattice(spec), ops, claims=[Claim("prl", _PAIR)])


# --- lattice effect algebras -------------------------------------------------

def _lea_from_sum(name: str, labels: tuple[str, ...], pairs, plus_fn, comp: tuple[int, ...]) -> StructureBundle:
    from .derivations import ea_difference, lea_tnorm, sasaki_arrow

    L = build_lattice(labels, pairs)
    plus = PartialBinaryOp.from_function(L.n, plus_fn)
    B = StructureBundle(name, L, {"plus": plus}, {"comp": UnaryOpTable(comp)}, [Claim("lea", ("plus", "comp"))])
    ominus = PartialBinaryOp.from_function(L.n, lambda x, z: ea_difference(plus, z, x) if L.leq[x][z] else None)
    ops = {"plus": plus, "ominus": ominus, "odot": lea_tnorm(B), "sasaki": sasaki_arrow(B)}
    return StructureBundle(name, L, ops, {"comp": UnaryOpTable(comp)}, [
        Claim("lea", ("plus", "comp")),
        Claim("ptnorm", ("odot",)),
        Claim("quasires", ("odot", "sasaki", "comp")),
        Claim("zlprl", ("plus", "ominus")),
    ])


def lea_chain(n: int) -> StructureBundle:
    """Lukasiewicz chain {0, 1/(n-1), ..., 1}: i + j defined iff i + j <= n-1."""
    if n < 2:
        raise BadParams("an effect-algebra chain needs at least two elements")
    top = n - 1
    labels = tuple(str(i) for i in range(n))
    pairs = [(str(i), str(i + 1)) for i in range(top)]
    return _lea_from_sum(f"lea:chain{n}", labels, pairs, lambda i, j: i + j if i + j <= top else None,
                         tuple(top - i for i in range(n)))


def lea_product(m: int, k: int) -> StructureBundle:
    """Product of two Lukasiewicz chains, sum taken coordinatewise."""
    elems = [(i, j) for i in range(m) for j in range(k)]
    labels = tuple(f"{i}{j}" for i, j in elems)
    idx = {e: t for t, e in enumerate(elems)}
    pairs = [(f"{i}{j}", f"{i2}{j2}") for (i, j) in elems for (i2, j2) in elems
             if (i2, j2) in ((i + 1, j), (i, j + 1))]

    def plus(a, b):
        (i, j), (i2, j2) = elems[a], elems[b]
        if i + i2 < m and j + j2 < k:
            return idx[(i + i2, j + j2)]
        return None

    comp = tuple(idx[(m - 1 - i, k - 1 - j)] for i, j in elems)
    return _lea_from_sum(f"lea:{m}x{k}", labels, pairs, plus, comp)


def lea_mo2() -> StructureBundle:
    """Horizontal sum of two three-element chains: atoms a, b with a+a = b+b = 1."""
    labels = ("0", "a", "b", "1")
    table = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2, (0, 3): 3, (3, 0): 3, (1, 1): 3, (2, 2): 3}
    return _lea_from_sum("lea:diamond", labels, [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
                         lambda x, y: table.get((x, y)), (3, 1, 2, 0))


LEA_BUILDERS: dict[str, Callable[[], StructureBundle]] = {
    "lea:bool": lambda: _renamed(lea_chain(2), "lea:bool"),
    "lea:chain3": lambda: lea_chain(3),
    "lea:chain4": lambda: lea_chain(4),
    "lea:chain5": lambda: lea_chain(5),
    "lea:chain6": lambda: lea_chain(6),
    "lea:diamond": lea_mo2,
    "lea:boolean4": lambda: _renamed(lea_product(2, 2), "lea:boolean4"),
    "lea:2x3": lambda: lea_product(2, 3),
}


def _renamed(B: StructureBundle, name: str) -> StructureBundle:
    return StructureBundle(name, B.lattice, B.ops, B.unaries, B.claims)


# --- small families ------------------------------------------------------------

def chain_bundle(n: int) -> StructureBundle:
    if not isinstance(n, int) or n < 1:
        raise BadParams("chain needs n >= 1")
    L = chain(n)
    ops = {"otimes": total_min(L), "arrow": goedel_implication(L)}
    return StructureBundle(f"chain{n}", L, ops, claims=[Claim("ptnorm", ("otimes",)), Claim("rl", _PAIR)])


def intro_conj(kind: str) -> StructureBundle:
    """Conjunction tables of a fuzzy partial logic with the undefined value removed.

    Only cells between defined truth values survive, which leaves minimum on
    the truth values; the two-valued and three-valued variants are kept.
    """
    n = 2 if kind == "unary" else 3
    L = chain(n, ["0", "1"] if n == 2 else ["0", "d", "1"])
    return StructureBundle(f"intro-conj-{kind}", L, {"conj": total_min(L)}, claims=[Claim("ptnorm", ("conj",))])


# --- registry ------------------------------------------------------------------

EXAMPLE_NAMES = tuple(EXAMPLES)
GRID_NAMES = tuple(f"grid:{k}" for k in (*GRID_TNORMS, *GRID_PAIRS))
FAMILY_NAMES = ("chain", *LEA_BUILDERS, "intro-conj-unary", "intro-conj-binary")


def builtin_names() -> list[str]:
    return [*EXAMPLE_NAMES, *GRID_NAMES, *FAMILY_NAMES]


def builtin(name: str, params: Mapping | None = None) -> StructureBundle:
    params = dict(params or {})
    if name in EXAMPLES:
        _no_params(name, params)
        return _example(name)
    if name.startswith("grid:"):
        key = name[5:]
        spec = _grid_spec(params)
        if key in GRID_TNORMS:
            return grid_bundle(key, spec)
        if key in GRID_PAIRS:
            return builtin_grid_pair(key, spec)
        raise UnknownBuiltin(f"unknown builtin {name!r}")
    if name == "chain":
        n = params.pop("n", 2)
        _no_params(name, params)
        try:
            n = int(n)
        except (TypeError, ValueError):
            raise BadParams(f"chain n must be an integer, got {n!r}") from None
        return chain_bundle(n)
    if name in LEA_BUILDERS:
        _no_params(name, params)
        return LEA_BUILDERS[name]()
    if name in ("intro-conj-unary", "intro-conj-binary"):
        _no_params(name, params)
        return intro_conj(name.rsplit("-", 1)[1])
    raise UnknownBuiltin(f"unknown builtin {name!r}")


def _no_params(name: str, params: Mapping):
    if params:
        raise BadParams(f"{name} takes no parameters (got {sorted(params)})")


def _grid_spec(params: dict) -> GridSpec:
    d = params.pop("denominator", params.pop("d", 4))
    alpha = params.pop("alpha", None)
    if params:
        raise BadParams(f"unknown grid parameters {sorted(params)}")
    try:
        d = int(d)
        alpha = None if alpha is None else Fraction(alpha)
    except (TypeError, ValueError):
        raise BadParams("grid parameters must be numeric") from None
    return GridSpec(d, alpha)


def registry(denominators: tuple[int, ...] = (4,)) -> list[StructureBundle]:
    """Every builtin with default parameters (grids at each given denominator)."""
    out = [builtin(n) for n in EXAMPLE_NAMES]
    for d in denominators:
        out += [builtin(n, {"denominator": d}) for n in GRID_NAMES]
    out += [builtin("chain", {"n": k}) for k in (1, 2, 3, 4, 5)]
    out += [LEA_BUILDERS[k]() for k in LEA_BUILDERS]
    out += [intro_conj("unary"), intro_conj("binary")]
    return out
