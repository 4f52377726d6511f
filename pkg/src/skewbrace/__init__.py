"""Finite skew braces: construction, enumeration, nilpotency series and
class-bound verification."""
from .brace import SkewBrace, brace_from_json, brace_from_tables, trivial_brace
from .constructors import (
    brace_from_derivation,
    brace_isomorphic,
    enumerate_braces,
    worked_example_c4c2,
    worked_example_nonnilpotent_type,
)
from .groups import FiniteGroup, group_by_name, group_from_table
from .series import analyze, theorem_a_check

__all__ = [
    "FiniteGroup",
    "SkewBrace",
    "analyze",
    "brace_from_derivation",
    "brace_from_json",
    "brace_from_tables",
    "brace_isomorphic",
    "enumerate_braces",
    "group_by_name",
    "group_from_table",
    "worked_example_c4c2",
    "worked_example_nonnilpotent_type",
    "theorem_a_check",
    "trivial_brace",
]
