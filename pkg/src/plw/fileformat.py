"""Line-oriented structure files (``.plw``).

::

    structure ex2.11
    elements: 0 1 2 3 4
    order: 0<=1 , 1<=2 , 2<=4 , 0<=3 , 3<=4
    op odot :
      0 : - - - - 0
      ...
    unary comp : 4 3 2 1 0
    claim: ptnorm(odot)
    end

``#`` starts a comment, ``-`` marks an undefined cell, and the order line
lists generating pairs whose reflexive-transitive closure is taken.
"""

from __future__ import annotations

import re
from pathlib import Path

from .checkers import CLASS_SIGNATURES, Claim, StructureBundle
from .errors import DuplicateOpName, InputError, RaggedTable, StructureSyntaxError, UnknownClass, UnknownElement
from .lattice import build_lattice
from .partial import PartialBinaryOp, UnaryOpTable

UNDEF = "-"
_CLAIM = re.compile(r"^(\w+)\s*\(\s*([^()]*)\)$")
_RESERVED = set("#:,()") | {" "}


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _keyword(text: str, key: str) -> str | None:
    """Body after ``key:`` when the line starts with it."""
    if text.startswith(key):
        rest = text[len(key):].lstrip()
        if rest.startswith(":"):
            return rest[1:].strip()
    return None


def _is_directive(text: str) -> bool:
    return text == "end" or text.startswith(("op ", "unary ")) or _keyword(text, "claim") is not None


class _Parser:
    def __init__(self, text: str):
        self.lines = [(i + 1, _strip(raw)) for i, raw in enumerate(text.splitlines())]
        self.lines = [(no, s) for no, s in self.lines if s]
        self.pos = 0

    def next(self, what: str) -> tuple[int, str]:
        if self.pos >= len(self.lines):
            last = self.lines[-1][0] if self.lines else 1
            raise StructureSyntaxError(f"unexpected end of file, expected {what}", last)
        item = self.lines[self.pos]
        self.pos += 1
        return item

    def peek(self) -> str | None:
        return self.lines[self.pos][1] if self.pos < len(self.lines) else None

    def parse(self) -> StructureBundle:
        no, s = self.next("'structure <name>'")
        parts = s.split()
        if len(parts) != 2 or parts[0] != "structure":
            raise StructureSyntaxError("expected 'structure <name>'", no)
        name = parts[1]

        no, s = self.next("'elements:'")
        body = _keyword(s, "elements")
        if body is None or not body.split():
            raise StructureSyntaxError("expected 'elements: <lbl> ...'", no)
        labels = body.split()
        if len(set(labels)) != len(labels):
            raise StructureSyntaxError("duplicate element label", no)
        if UNDEF in labels:
            raise StructureSyntaxError(f"'{UNDEF}' is reserved for undefined cells", no)
        pos = {lbl: i for i, lbl in enumerate(labels)}

        pairs: list[tuple[str, str]] = []
        order_line = no
        if self.peek() is not None and _keyword(self.peek(), "order") is not None:
            order_line, s = self.next("'order:'")
            pairs = self._order(_keyword(s, "order"), pos, order_line)
        try:
            L = build_lattice(labels, pairs)
        except InputError as exc:
            raise type(exc)(f"line {order_line}: {exc}") from None

        ops: dict[str, PartialBinaryOp] = {}
        unaries: dict[str, UnaryOpTable] = {}
        claims: list[Claim] = []
        while True:
            no, s = self.next("'end'")
            if s == "end":
                break
            if s.startswith("op ") or s.startswith("op\t"):
                opname = self._header(s[2:], no, "op <name> :")
                if opname in ops or opname in unaries:
                    raise DuplicateOpName(f"operation {opname!r} defined twice", no)
                ops[opname] = self._table(labels, pos, opname)
            elif s.startswith("unary "):
                head, _, cells = s[len("unary "):].partition(":")
                opname = head.strip()
                if not opname or " " in opname:
                    raise StructureSyntaxError("expected 'unary <name> : <cell> ...'", no)
                if opname in ops or opname in unaries:
                    raise DuplicateOpName(f"operation {opname!r} defined twice", no)
                toks = cells.split()
                if len(toks) != len(labels):
                    raise RaggedTable(f"unary {opname} has {len(toks)} cells, expected {len(labels)}", no)
                unaries[opname] = UnaryOpTable(tuple(self._cell(t, pos, no, allow_undef=False) for t in toks))
            elif _keyword(s, "claim") is not None:
                claims.append(self._claim(_keyword(s, "claim"), ops, unaries, no))
            else:
                raise StructureSyntaxError(f"unrecognized line {s!r}", no)
        if self.peek() is not None:
            raise StructureSyntaxError("content after 'end'", self.lines[self.pos][0])
        return StructureBundle(name, L, ops, unaries, claims)

    @staticmethod
    def _header(rest: str, no: int, form: str) -> str:
        rest = rest.strip()
        if not rest.endswith(":"):
            raise StructureSyntaxError(f"expected '{form}'", no)
        name = rest[:-1].strip()
        if not name or any(c in _RESERVED for c in name):
            raise StructureSyntaxError(f"expected '{form}'", no)
        return name

    @staticmethod
    def _order(body: str, pos: dict[str, int], no: int) -> list[tuple[str, str]]:
        pairs = []
        for item in filter(None, (p.strip() for p in body.split(","))):
            a, sep, b = item.partition("<=")
            a, b = a.strip(), b.strip()
            if not sep or not a or not b:
                raise StructureSyntaxError(f"bad order pair {item!r}", no)
            for x in (a, b):
                if x not in pos:
                    raise UnknownElement(f"line {no}: unknown element {x!r}")
            pairs.append((a, b))
        return pairs

    @staticmethod
    def _cell(tok: str, pos: dict[str, int], no: int, allow_undef: bool = True) -> int | None:
        if tok == UNDEF:
            if not allow_undef:
                raise StructureSyntaxError("unary operations must be total", no)
            return None
        if tok not in pos:
            raise UnknownElement(f"line {no}: unknown element {tok!r}")
        return pos[tok]

    def _table(self, labels: list[str], pos: dict[str, int], opname: str) -> PartialBinaryOp:
        rows: dict[int, list[int | None]] = {}
        for _ in labels:
            no, s = self.next(f"row of op {opname}")
            head, sep, cells = s.partition(":")
            head = head.strip()
            if not sep or (head not in pos and _is_directive(s)):
                raise RaggedTable(f"op {opname} has {len(rows)} rows, expected {len(labels)}", no)
            if head not in pos:
                raise UnknownElement(f"line {no}: unknown element {head!r}")
            if pos[head] in rows:
                raise StructureSyntaxError(f"row {head} of op {opname} given twice", no)
            toks = cells.split()
            if len(toks) != len(labels):
                raise RaggedTable(f"row {head} of op {opname} has {len(toks)} cells, expected {len(labels)}", no)
            rows[pos[head]] = [self._cell(t, pos, no) for t in toks]
        return PartialBinaryOp.from_rows([rows[i] for i in range(len(labels))])

    @staticmethod
    def _claim(body: str, ops, unaries, no: int) -> Claim:
        m = _CLAIM.match(body)
        if not m:
            raise StructureSyntaxError("expected 'claim: <tag>(<op>[, <op>])'", no)
        tag = m.group(1)
        operands = tuple(o.strip() for o in m.group(2).split(",") if o.strip())
        if tag not in CLASS_SIGNATURES:
            raise UnknownClass(f"line {no}: unknown class tag {tag!r}")
        sig = CLASS_SIGNATURES[tag]
        if len(operands) != len(sig):
            raise StructureSyntaxError(f"claim {tag} takes {len(sig)} operand(s)", no)
        for kind, o in zip(sig, operands):
            table = ops if kind == "b" else unaries
            if o not in table:
                what = "binary" if kind == "b" else "unary"
                raise StructureSyntaxError(f"claim {tag} refers to unknown {what} op {o!r}", no)
        return Claim(tag, operands)


def parse_structure(text: str) -> StructureBundle:
    return _Parser(text).parse()


def load_structure(path: str | Path) -> StructureBundle:
    return parse_structure(Path(path).read_text(encoding="utf-8"))


def serialize_structure(B: StructureBundle) -> str:
    L = B.lattice
    for lbl in L.labels:
        if lbl == UNDEF or any(c in _RESERVED or c.isspace() for c in lbl) or "<=" in lbl:
            raise StructureSyntaxError(f"label {lbl!r} cannot be written to a structure file")

    def cell(v: int | None) -> str:
        return UNDEF if v is None else L.labels[v]

    width = max(len(l) for l in L.labels)
    out = [f"structure {B.name}", "elements: " + " ".join(L.labels)]
    if L.n > 1:
        out.append("order: " + " , ".join(f"{a}<={b}" for a, b in L.order_pairs()))
    for name, op in B.ops.items():
        out.append(f"op {name} :")
        for i, row in enumerate(op.cells):
            out.append(f"  {L.labels[i].ljust(width)} : " + " ".join(cell(v).rjust(width) for v in row).rstrip())
    for name, u in B.unaries.items():
        out.append(f"unary {name} : " + " ".join(cell(v) for v in u.image))
    for c in B.claims:
        out.append(f"claim: {c}")
    out.append("end")
    return "\n".join(out) + "\n"


def shipped(name: str) -> str:
    """Text of a structure file bundled with the package (e.g. ``"ex2.11.plw"``)."""
    from importlib.resources import files

    return files("plw").joinpath("data", name).read_text(encoding="utf-8")
