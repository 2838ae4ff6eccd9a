from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import lattice_and_op
from plw.checkers import Claim, StructureBundle
from plw.errors import DuplicateOpName, RaggedTable, StructureSyntaxError, UnknownClass, UnknownElement
from plw.families import builtin, registry
from plw.fileformat import load_structure, parse_structure, serialize_structure, shipped

SMALL = """\
structure tiny
elements: 0 a 1
order: 0<=a , a<=1
op m :
  0 : - 0 0   # bottom row
  a : 0 a a
  1 : 0 a 1
claim: ptnorm(m)
end
"""


def roundtrip(B):
    return parse_structure(serialize_structure(B))


class TestParse:
    def test_small(self):
        B = parse_structure(SMALL)
        assert B.name == "tiny"
        assert B.lattice.labels == ("0", "a", "1")
        assert B.ops["m"].cells[0] == (None, 0, 0)
        assert B.claims == [Claim("ptnorm", ("m",))]

    def test_shipped_file(self):
        assert parse_structure(shipped("ex2.11.plw")).semantic_key() == builtin("ex2.11").semantic_key()

    def test_load_from_path(self, tmp_path):
        p = tmp_path / "t.plw"
        p.write_text(SMALL, encoding="utf-8")
        assert load_structure(p).semantic_key() == parse_structure(SMALL).semantic_key()

    def test_one_element_without_order(self):
        B = parse_structure("structure one\nelements: e\nop m :\n  e : e\nclaim: ptnorm(m)\nend\n")
        assert B.lattice.n == 1
        assert B.lattice.top == B.lattice.bottom

    def test_unary(self):
        B = parse_structure("structure n\nelements: 0 1\norder: 0<=1\nunary neg : 1 0\nclaim: negation(neg)\nend\n")
        assert B.unaries["neg"].image == (1, 0)


class TestErrors:
    def test_ragged_row(self):
        bad = SMALL.replace("  a : 0 a a", "  a : 0 a")
        with pytest.raises(RaggedTable):
            parse_structure(bad)

    def test_missing_row(self):
        bad = SMALL.replace("  1 : 0 a 1\n", "")
        with pytest.raises(RaggedTable):
            parse_structure(bad)

    def test_duplicate_op(self):
        dup = SMALL.replace("claim", "op m :\n  0 : - 0 0\n  a : 0 a a\n  1 : 0 a 1\nclaim")
        with pytest.raises(DuplicateOpName):
            parse_structure(dup)

    def test_unknown_element(self):
        with pytest.raises(UnknownElement):
            parse_structure(SMALL.replace("a : 0 a a", "a : 0 z a"))
        with pytest.raises(UnknownElement):
            parse_structure(SMALL.replace("a<=1", "a<=2"))

    def test_unknown_class(self):
        with pytest.raises(UnknownClass):
            parse_structure(SMALL.replace("ptnorm(m)", "frobnicate(m)"))

    def test_syntax_error_line(self):
        with pytest.raises(StructureSyntaxError) as info:
            parse_structure(SMALL.replace("end\n", "whatever\nend\n"))
        assert info.value.line == 9

    def test_missing_end(self):
        with pytest.raises(StructureSyntaxError):
            parse_structure(SMALL.replace("end\n", ""))

    def test_claim_operand_check(self):
        with pytest.raises(StructureSyntaxError):
            parse_structure(SMALL.replace("ptnorm(m)", "ptnorm(q)"))
        with pytest.raises(StructureSyntaxError):
            parse_structure(SMALL.replace("ptnorm(m)", "prl(m)"))

    def test_undefined_unary_cell(self):
        with pytest.raises(StructureSyntaxError):
            parse_structure("structure n\nelements: 0 1\norder: 0<=1\nunary neg : 1 -\nend\n")


class TestRoundTrip:
    @pytest.mark.parametrize("B", registry(denominators=(2, 4, 8)), ids=lambda B: B.name)
    def test_builtins(self, B):
        assert roundtrip(B).semantic_key() == B.semantic_key()

    def test_serialize_is_stable(self):
        B = builtin("ex4.22")
        assert serialize_structure(B) == serialize_structure(roundtrip(B))

    def test_rejects_unwritable_label(self):
        B = parse_structure(SMALL)
        from plw.lattice import relabel
        bad = StructureBundle("x", relabel(B.lattice, ["0", "a b", "1"]), B.ops)
        with pytest.raises(StructureSyntaxError):
            serialize_structure(bad)

    @settings(max_examples=40, deadline=None)
    @given(lattice_and_op(1, 4))
    def test_random_tables(self, pair):
        L, op = pair
        B = StructureBundle("rand", L, {"op": op})
        assert roundtrip(B).semantic_key() == B.semantic_key()
