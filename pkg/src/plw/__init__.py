"""Finite partial residuated structures: checkers, constructions, filters and enumeration."""

from .checkers import CheckReport, Claim, StructureBundle, check_class, check_claims
from .derivations import derive_prci, derive_pri, dualize_to_pcrl, lea_prl, lea_tnorm
from .enumeration import EnumerationTask, enumerate_class, infer_orders
from .families import builtin, builtin_names, figure, registry
from .fileformat import parse_structure, serialize_structure
from .filters import build_quotient, enumerate_filters, enumerate_strong_filters, is_filter, is_strong_filter
from .lattice import FiniteBoundedLattice, build_lattice, chain
from .partial import PartialBinaryOp, UnaryOpTable
from .report import emit_report, export_dot
from .theorems import TheoremVerdict, verify_theorems

__all__ = [
    "CheckReport", "Claim", "StructureBundle", "check_class", "check_claims",
    "derive_prci", "derive_pri", "dualize_to_pcrl", "lea_prl", "lea_tnorm",
    "EnumerationTask", "enumerate_class", "infer_orders",
    "builtin", "builtin_names", "figure", "registry",
    "parse_structure", "serialize_structure",
    "build_quotient", "enumerate_filters", "enumerate_strong_filters", "is_filter", "is_strong_filter",
    "FiniteBoundedLattice", "build_lattice", "chain",
    "PartialBinaryOp", "UnaryOpTable",
    "emit_report", "export_dot",
    "TheoremVerdict", "verify_theorems",
]
